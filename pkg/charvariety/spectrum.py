from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import numpy as np

from charvariety.character import Character, require_rank
from charvariety.roots import roots, trim_leading
from lpmat.charpoly import char_poly
from lpmat.matrix import LaurentMatrix
from lpmat.upoly import UPoly
from utils.errors import PreconditionError, ToleranceError
from utils.settings import Settings, load_settings

SpectralObject = Union[LaurentMatrix, UPoly]


def specialize_matrix(m: LaurentMatrix, character: Character) -> np.ndarray:
    require_rank(character, m.num_vars)
    return np.array([[e.eval_character(character) for e in row] for row in m.rows], dtype=complex)


def specialize_upoly(p: UPoly, character: Character) -> np.ndarray:
    """Complex coefficients of the specialized polynomial, lowest degree first."""
    require_rank(character, p.num_vars)
    return np.array([c.eval_character(character) for c in p.coeffs], dtype=complex)


def power_radius(matrix: np.ndarray, squarings: int = 48) -> float:
    """Spectral radius from norms of A^(2^m), renormalizing after every squaring.

    ||A^N||^(1/N) converges to rho(A) also when several eigenvalues share the top
    modulus, where the vector power method oscillates.
    """
    a = np.asarray(matrix, dtype=complex)
    norm = float(np.linalg.norm(a, 2))
    if norm == 0.0:
        return 0.0
    b = a / norm
    log_scale = math.log(norm)
    power = 1
    for _ in range(squarings):
        b = b @ b
        nu = float(np.linalg.norm(b, 2))
        if nu == 0.0:
            return 0.0
        b /= nu
        log_scale = 2.0 * log_scale + math.log(nu)
        power *= 2
    return math.exp(log_scale / power)


def sort_spectrum(values: Sequence[complex]) -> Tuple[complex, ...]:
    """Moduli descending; ties broken by ascending argument in [0, 2*pi)."""

    def key(z: complex) -> Tuple[float, float]:
        return (-round(abs(z), 12), math.atan2(z.imag, z.real) % (2 * math.pi))

    return tuple(sorted((complex(v) for v in values), key=key))


@dataclass(frozen=True)
class SpectrumReport:
    character: Character
    eigenvalues: Tuple[complex, ...]
    eigenvalue_moduli: Tuple[float, ...]
    rho: float
    gamma: float
    power_rho: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "character": self.character.labels(),
            "eigenvalues": [[z.real, z.imag] for z in self.eigenvalues],
            "eigenvalue_moduli": list(self.eigenvalue_moduli),
            "rho": self.rho,
            "gamma": self.gamma,
            "power_rho": self.power_rho,
        }


def spectrum_from_coeffs(
    coeffs: np.ndarray,
    character: Character,
    settings: Settings,
    matrix: Optional[np.ndarray] = None,
) -> SpectrumReport:
    trimmed = trim_leading(coeffs)
    if trimmed.size < 2:
        raise PreconditionError(f"characteristic polynomial has degree 0 at character {character}")
    values = sort_spectrum(roots(trimmed, tol=settings.root_tol, max_iter=settings.root_max_iter))
    moduli = tuple(abs(z) for z in values)
    rho = moduli[0]
    gamma = max(moduli[0] - moduli[1], 0.0) if len(moduli) > 1 else 0.0

    power_rho = None
    if matrix is not None:
        power_rho = power_radius(matrix, settings.power_squarings)
        if abs(power_rho - rho) > settings.crosscheck_tol * max(1.0, rho):
            raise ToleranceError(
                f"spectral radius at {character}: roots give {rho:.12g}, power iteration gives {power_rho:.12g}",
                expected=rho,
                observed=power_rho,
            )
    return SpectrumReport(character, values, moduli, rho, gamma, power_rho)


def spectrum(obj: SpectralObject, character: Character, settings: Optional[Settings] = None) -> SpectrumReport:
    """Eigenvalues at ``character`` from the exact characteristic polynomial, specialized."""
    settings = settings or load_settings()
    if isinstance(obj, LaurentMatrix):
        poly = char_poly(obj)
        return spectrum_from_coeffs(
            specialize_upoly(poly, character), character, settings, specialize_matrix(obj, character)
        )
    return spectrum_from_coeffs(specialize_upoly(obj, character), character, settings)

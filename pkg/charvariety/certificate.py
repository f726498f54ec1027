from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

import numpy as np

from charvariety.character import Character
from charvariety.spectrum import specialize_matrix, spectrum
from lpmat.matrix import LaurentMatrix
from lpmat.perron import require_nonnegative
from utils.errors import PreconditionError
from utils.settings import Settings, load_settings


def gap_certificate(m: LaurentMatrix, character: Character) -> float:
    """C = max_ij |chi(m_ij)| / phi0(m_ij).

    For entries with positive coefficients this bounds |chi(M^n)_ij| by C^n phi0(M^n)_ij,
    hence rho(chi(M)) <= C rho(phi0(M)).
    """
    require_nonnegative(m)
    ratio = 0.0
    for i, j, entry in m.entries():
        if entry.is_zero():
            raise PreconditionError(f"entry ({i + 1},{j + 1}) is zero; the gap certificate needs every entry positive")
        trivial_value = sum(c for _, c in entry.items())
        ratio = max(ratio, abs(entry.eval_character(character)) / trivial_value)
    return min(ratio, 1.0)


@dataclass(frozen=True)
class CertificateCheck:
    constant: float
    max_power: int
    entrywise_violations: int
    norm_violations: int
    radius_ok: bool
    rho_character: float
    rho_trivial: float
    worst_slack: float

    @property
    def passed(self) -> bool:
        return self.entrywise_violations == 0 and self.norm_violations == 0 and self.radius_ok

    def to_dict(self) -> Dict[str, Any]:
        payload = asdict(self)
        payload["passed"] = self.passed
        return payload


def verify_certificate(
    m: LaurentMatrix,
    character: Character,
    max_power: int = 6,
    tol: float = 1e-9,
    settings: Optional[Settings] = None,
) -> CertificateCheck:
    """Check the entrywise, l1 and spectral-radius bounds implied by the constant C."""
    if max_power < 1:
        raise PreconditionError(f"max power must be >= 1, got {max_power}")
    settings = settings or load_settings()
    constant = gap_certificate(m, character)
    twisted = specialize_matrix(m, character)
    trivial = specialize_matrix(m, Character.trivial(m.num_vars)).real

    entry_bad = 0
    norm_bad = 0
    worst = np.inf
    twisted_power = np.eye(m.dim, dtype=complex)
    trivial_power = np.eye(m.dim)
    for n in range(1, max_power + 1):
        twisted_power = twisted_power @ twisted
        trivial_power = trivial_power @ trivial
        bound = constant**n * trivial_power
        slack = bound + tol - np.abs(twisted_power)
        entry_bad += int(np.count_nonzero(slack < 0))
        worst = min(worst, float(slack.min()))
        if np.abs(twisted_power).sum() > constant**n * trivial_power.sum() + tol:
            norm_bad += 1

    rho_character = spectrum(m, character, settings).rho
    rho_trivial = spectrum(m, Character.trivial(m.num_vars), settings).rho
    radius_ok = rho_character <= constant * rho_trivial + tol
    return CertificateCheck(
        constant, max_power, entry_bad, norm_bad, radius_ok, rho_character, rho_trivial, worst
    )

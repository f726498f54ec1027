from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np

from charvariety.character import Character
from charvariety.roots import roots, trim_leading
from charvariety.spectrum import specialize_upoly
from laurent.poly import UnitMonomial
from lpmat.upoly import UPoly, require_same_vars
from utils.errors import NotDivisibleError, NumericCheckError, ZeroPolynomialError
from utils.settings import Settings, load_settings

# denominators of the sampled torsion characters are drawn from 1..MAX_SAMPLE_ORDER
MAX_SAMPLE_ORDER = 12


@dataclass(frozen=True)
class Corroboration:
    character: Character
    passed: bool
    worst_residual: float
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "character": self.character.labels(),
            "passed": self.passed,
            "worst_residual": self.worst_residual,
            "detail": self.detail,
        }


@dataclass
class DivisibilityReport:
    divides: bool
    unit: Optional[UnitMonomial]
    quotient: Optional[UPoly]
    diagnostic: str
    corroborations: List[Corroboration] = field(default_factory=list)

    @property
    def corroborated(self) -> int:
        return sum(1 for c in self.corroborations if c.passed)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "divides": self.divides,
            "unit": {"sign": self.unit.sign, "exponents": list(self.unit.exponents)} if self.unit else None,
            "diagnostic": self.diagnostic,
            "corroborated": self.corroborated,
            "samples": len(self.corroborations),
            "corroborations": [c.to_dict() for c in self.corroborations],
        }


def sample_characters(num_vars: int, samples: int, seed: int) -> List[Character]:
    """Fixed schedule of random torsion characters drawn from ``default_rng(seed)``."""
    rng = np.random.default_rng(seed)
    schedule: List[Character] = []
    for _ in range(samples):
        denominators = rng.integers(1, MAX_SAMPLE_ORDER + 1, size=num_vars)
        turns = tuple(Fraction(int(rng.integers(0, d)), int(d)) for d in denominators)
        schedule.append(Character(turns))
    return schedule


def _corroborate(a: UPoly, t: UPoly, character: Character, settings: Settings) -> Corroboration:
    a_values = trim_leading(specialize_upoly(a, character))
    t_values = specialize_upoly(t, character)
    if a_values.size < 2:
        return Corroboration(character, True, 0.0, "specialized divisor is constant")
    try:
        found = roots(a_values, tol=settings.root_tol, max_iter=settings.root_max_iter)
    except NumericCheckError as exc:
        return Corroboration(character, False, float("inf"), str(exc))
    magnitude = np.abs(t_values)
    worst = 0.0
    passed = True
    for r in found:
        scale = 1.0 + float(np.sum(magnitude * np.maximum(1.0, abs(r)) ** np.arange(magnitude.size)))
        value = abs(np.polyval(t_values[::-1], r)) if t_values.size else 0.0
        ratio = value / scale
        worst = max(worst, ratio)
        if ratio > settings.corroboration_tol:
            passed = False
    return Corroboration(character, passed, worst)


def check_divisibility(
    a: UPoly,
    t: UPoly,
    samples: Optional[int] = None,
    seed: int = 0,
    jobs: int = 1,
    settings: Optional[Settings] = None,
) -> DivisibilityReport:
    """Decide whether T = mu * A * Q for a unit mu, with specialization corroboration.

    The exact long division governs the answer. Since Z[H] is a domain the division
    either runs through with zero remainder or stops at a certificate of non-divisibility.
    """
    require_same_vars(a, t)
    if a.is_zero():
        raise ZeroPolynomialError("divisor A must be nonzero")
    settings = settings or load_settings()
    count = settings.corroboration_samples if samples is None else samples

    unit, normalized = a.unit_normalize()
    quotient: Optional[UPoly] = None
    try:
        quotient = t.divide_exact(normalized)
        divides = True
        diagnostic = f"T = ({unit.inverse()}) * A * ({quotient})"
    except NotDivisibleError as exc:
        divides = False
        steps, _, pseudo_remainder = t.pseudo_divmod(normalized)
        diagnostic = f"{exc}; pseudo-remainder after {steps} steps is {pseudo_remainder}"

    schedule = sample_characters(a.num_vars, count, seed)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            checks = list(pool.map(lambda ch: _corroborate(a, t, ch, settings), schedule))
    else:
        checks = [_corroborate(a, t, ch, settings) for ch in schedule]
    return DivisibilityReport(divides, unit.inverse() if divides else None, quotient, diagnostic, checks)


def divides_up_to_unit(a: UPoly, t: UPoly, **kwargs: Any) -> bool:
    return check_divisibility(a, t, **kwargs).divides

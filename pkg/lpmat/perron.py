from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np

from lpmat.matrix import LaurentMatrix, mat_mul
from utils.errors import MixedSignError, NotPrimitiveError, SpreadNeverUniformError


@dataclass(frozen=True)
class PFReport:
    primitive: bool
    exponent: Optional[int]
    failure_witness: Optional[Tuple[int, int]]
    wielandt_bound: int
    reason: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        payload = asdict(self)
        if self.failure_witness is not None:
            payload["failure_witness"] = list(self.failure_witness)
        return payload


def wielandt_bound(dim: int) -> int:
    return (dim - 1) ** 2 + 1


def require_nonnegative(m: LaurentMatrix) -> None:
    position = m.first_negative_entry()
    if position is not None:
        i, j = position
        raise MixedSignError(
            f"entry ({i + 1},{j + 1}) = {m.entry(i, j)} has a negative coefficient; "
            "Perron-Frobenius tests need nonnegative coefficients",
            position=(i + 1, j + 1),
        )


def support_pattern(m: LaurentMatrix) -> np.ndarray:
    return np.array([[not e.is_zero() for e in row] for row in m.rows], dtype=bool)


def _bool_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a.astype(np.int64) @ b.astype(np.int64)) > 0


def primitivity(m: LaurentMatrix) -> PFReport:
    """Least k with every entry of M^k nonzero, searched up to the Wielandt bound.

    With nonnegative coefficients no cancellation occurs, so the boolean support
    pattern of M^k is exactly the pattern of the Laurent power.
    """
    require_nonnegative(m)
    bound = wielandt_bound(m.dim)
    pattern = support_pattern(m)
    power = pattern.copy()
    reach = pattern.copy()
    for k in range(1, bound + 1):
        if power.all():
            return PFReport(True, k, None, bound)
        power = _bool_mul(power, pattern)
        if k < m.dim:
            reach |= power

    unreachable = np.argwhere(~reach)
    if unreachable.size:
        i, j = (int(x) for x in unreachable[0])
        return PFReport(False, None, (i + 1, j + 1), bound, "entry is zero in every power (reducible pattern)")
    i, j = (int(x) for x in np.argwhere(~power)[0])
    return PFReport(False, None, (i + 1, j + 1), bound, "pattern is irreducible but periodic")


def uniform_spread_exponent(m: LaurentMatrix, var: int = 0) -> int:
    """Least k with every entry of M^k nonzero and of spread >= 1 in ``var``."""
    report = primitivity(m)
    if not report.primitive:
        raise NotPrimitiveError(
            f"matrix is not primitive (witness entry {report.failure_witness}: {report.reason})"
        )
    base = m.support()
    if all(e.is_zero() or e.max_exponent(var) == 0 and e.min_exponent(var) == 0 for _, _, e in base.entries()):
        raise SpreadNeverUniformError(f"spread never uniform: no entry involves variable {var + 1}")

    # supports carry the exponent pattern of the powers without coefficient growth
    bound = 3 * report.wielandt_bound
    current = base
    for k in range(1, bound + 1):
        if all(not e.is_zero() and e.spread(var) >= 1 for _, _, e in current.entries()):
            return k
        if k < bound:
            current = mat_mul(current, base).support()
    raise SpreadNeverUniformError(f"spread never uniform in variable {var + 1} up to power {bound}")

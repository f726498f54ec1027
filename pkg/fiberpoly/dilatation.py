from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

import numpy as np

from charvariety.roots import bisect_root, real_roots, roots, trim_leading
from laurent.poly import UnitMonomial
from lpmat.upoly import UPoly
from utils.errors import DegenerateDirectionError, PreconditionError, ZeroPolynomialError
from utils.settings import Settings, load_settings


def specialize_positive(theta: UPoly, xi: Sequence[float]) -> np.ndarray:
    """Real coefficients of theta at t_j = exp(xi_j), lowest degree first."""
    return np.array([c.eval_positive(xi) for c in theta.coeffs], dtype=float)


def dilatation(theta: UPoly, xi: Sequence[float], settings: Optional[Settings] = None) -> float:
    """Largest real root of theta(u, exp(xi)), refined by bisection when it is simple."""
    if theta.is_zero():
        raise ZeroPolynomialError("dilatation of the zero polynomial is undefined")
    settings = settings or load_settings()
    coeffs = trim_leading(specialize_positive(theta, xi)).real
    if coeffs.size < 2:
        raise DegenerateDirectionError(f"theta has degree 0 in u along direction {list(xi)}")

    found = real_roots(roots(coeffs, tol=settings.root_tol, max_iter=settings.root_max_iter))
    candidates = found[found >= -settings.root_tol]
    if candidates.size == 0:
        raise DegenerateDirectionError(f"no nonnegative real root along direction {list(xi)}")
    top = max(float(candidates[-1]), 0.0)

    width = 1e-6 * max(1.0, top)
    try:
        return bisect_root(coeffs, top - width, top + width)
    except PreconditionError:
        # even multiplicity: no sign change to bracket
        return top


def dilatation_profile(
    theta: UPoly,
    directions: Sequence[Sequence[float]],
    settings: Optional[Settings] = None,
) -> List[Tuple[Tuple[float, ...], float]]:
    settings = settings or load_settings()
    return [(tuple(float(x) for x in xi), dilatation(theta, xi, settings)) for xi in directions]


def ray(direction: Sequence[float], scales: Sequence[float]) -> List[Tuple[float, ...]]:
    return [tuple(s * float(x) for x in direction) for s in scales]


def restrict_to_class(theta: UPoly, weights: Sequence[int]) -> UPoly:
    """Push theta along the class H -> Z sending t_j to s^weights[j]."""
    if len(weights) != theta.num_vars:
        raise PreconditionError(f"expected {theta.num_vars} weights, got {len(weights)}")
    if all(w == 0 for w in weights):
        raise PreconditionError("the zero class does not restrict theta to a fibration direction")
    images = [UnitMonomial(1, (int(w),)) for w in weights]
    return theta.substitute_units(images)

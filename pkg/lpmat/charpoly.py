from __future__ import annotations

from typing import List, Tuple

from laurent.poly import LaurentPoly
from lpmat.matrix import LaurentMatrix, mat_mul
from lpmat.upoly import UPoly
from utils.errors import IntegralityError, NotDivisibleError, PreconditionError


def _faddeev_leverrier(m: LaurentMatrix) -> Tuple[List[LaurentPoly], LaurentMatrix]:
    """Run the recurrence M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.

    Returns the coefficients c_0..c_n (c_n = 1) and M_n, the matrix with A M_n = -c_0 I.
    The division by k happens exactly in Z[H] at every step; an inexact division can
    only come from an arithmetic bug.
    """
    n = m.dim
    identity = LaurentMatrix.identity(n, m.num_vars)
    coeffs: List[LaurentPoly] = [LaurentPoly.zero(m.num_vars)] * (n + 1)
    coeffs[n] = LaurentPoly.one(m.num_vars)
    current = LaurentMatrix.zeros(n, m.num_vars)
    for k in range(1, n + 1):
        current = mat_mul(m, current) + identity.scale(coeffs[n - k + 1])
        trace = mat_mul(m, current).trace()
        try:
            coeffs[n - k] = -trace.scale_exact(k)
        except NotDivisibleError as exc:
            raise IntegralityError(
                f"Faddeev-LeVerrier step {k}: trace {trace} is not divisible by {k}"
            ) from exc
    return coeffs, current


def char_poly(m: LaurentMatrix) -> UPoly:
    """det(u I - M) as a monic u-polynomial over Z[H]."""
    coeffs, _ = _faddeev_leverrier(m)
    return UPoly(m.num_vars, coeffs)


def mat_inverse(m: LaurentMatrix) -> LaurentMatrix:
    """Exact inverse over Z[H]; requires det(M) to be a unit monomial."""
    coeffs, adjugate_part = _faddeev_leverrier(m)
    constant = coeffs[0]
    if not constant.is_unit():
        sign = "-" if m.dim % 2 else ""
        raise PreconditionError(f"matrix is not invertible over Z[H]: determinant {sign}({constant}) is not a unit")
    # A M_n = -c_0 I, so A^{-1} = -c_0^{-1} M_n
    factor = -(constant.as_unit().inverse().as_poly())
    return adjugate_part.scale(factor)

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple, Union

from laurent.poly import LaurentPoly, UnitMonomial
from utils.errors import NotDivisibleError, VariableMismatchError, ZeroPolynomialError

Scalar = Union[LaurentPoly, int]


class UPoly:
    """Polynomial in the distinguished variable u with Z[H] coefficients.

    ``coeffs[k]`` is the coefficient of u^k. Trailing zero coefficients are dropped, so
    the zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("num_vars", "coeffs")

    def __init__(self, num_vars: int, coeffs: Sequence[Scalar]):
        cells: List[LaurentPoly] = []
        for k, c in enumerate(coeffs):
            if isinstance(c, LaurentPoly):
                if c.num_vars != num_vars:
                    raise VariableMismatchError(f"coefficient of u^{k} has {c.num_vars} variables, expected {num_vars}")
                cells.append(c)
            else:
                cells.append(LaurentPoly.constant(num_vars, int(c)))
        while cells and cells[-1].is_zero():
            cells.pop()
        self.num_vars = num_vars
        self.coeffs: Tuple[LaurentPoly, ...] = tuple(cells)

    @classmethod
    def zero(cls, num_vars: int) -> "UPoly":
        return cls(num_vars, [])

    @classmethod
    def monomial(cls, num_vars: int, degree: int, coeff: Scalar = 1) -> "UPoly":
        zero = LaurentPoly.zero(num_vars)
        return cls(num_vars, [zero] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> LaurentPoly:
        if not self.coeffs:
            raise ZeroPolynomialError("the zero u-polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == LaurentPoly.one(self.num_vars)

    def coefficient(self, k: int) -> LaurentPoly:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return LaurentPoly.zero(self.num_vars)

    def _coerce(self, other: Union["UPoly", Scalar]) -> "UPoly":
        if isinstance(other, UPoly):
            if other.num_vars != self.num_vars:
                raise VariableMismatchError(f"variable count mismatch: {self.num_vars} vs {other.num_vars}")
            return other
        return UPoly(self.num_vars, [other])

    def __add__(self, other: Union["UPoly", Scalar]) -> "UPoly":
        rhs = self._coerce(other)
        size = max(len(self.coeffs), len(rhs.coeffs))
        return UPoly(self.num_vars, [self.coefficient(k) + rhs.coefficient(k) for k in range(size)])

    __radd__ = __add__

    def __neg__(self) -> "UPoly":
        return UPoly(self.num_vars, [-c for c in self.coeffs])

    def __sub__(self, other: Union["UPoly", Scalar]) -> "UPoly":
        return self + (-self._coerce(other))

    def __mul__(self, other: Union["UPoly", Scalar]) -> "UPoly":
        rhs = self._coerce(other)
        if self.is_zero() or rhs.is_zero():
            return UPoly.zero(self.num_vars)
        out = [LaurentPoly.zero(self.num_vars)] * (len(self.coeffs) + len(rhs.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(rhs.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return UPoly(self.num_vars, out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "UPoly":
        """Multiply by u^k, k >= 0."""
        return UPoly(self.num_vars, [LaurentPoly.zero(self.num_vars)] * k + list(self.coeffs))

    def substitute_units(self, images: Sequence[UnitMonomial]) -> "UPoly":
        target = images[0].num_vars if images else 0
        return UPoly(target, [c.substitute_units(images) for c in self.coeffs])

    def unit_normalize(self) -> Tuple[UnitMonomial, "UPoly"]:
        """Factor the unit out of the leading coefficient's normal form: self = mu * rest."""
        mu, _ = self.leading().unit_normal_form()
        inverse = mu.inverse().as_poly()
        return mu, UPoly(self.num_vars, [c * inverse for c in self.coeffs])

    def divmod_exact(self, divisor: "UPoly") -> Tuple["UPoly", "UPoly"]:
        """Long division where every quotient coefficient must be an exact Z[H] quotient.

        Returns (Q, R) with self = Q * divisor + R and deg R < deg divisor. Raises
        NotDivisibleError when a leading coefficient cannot be divided, carrying the
        partial remainder.
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroPolynomialError("division by the zero u-polynomial")
        lead = divisor.leading()
        remainder = self
        quotient = UPoly.zero(self.num_vars)
        while not remainder.is_zero() and remainder.degree >= divisor.degree:
            gap = remainder.degree - divisor.degree
            try:
                factor = remainder.leading().exact_divide(lead)
            except NotDivisibleError as exc:
                raise NotDivisibleError(
                    f"leading coefficient {remainder.leading()} is not divisible by {lead}",
                    remainder=remainder,
                ) from exc
            step = UPoly.monomial(self.num_vars, gap, factor)
            quotient = quotient + step
            remainder = remainder - step * divisor
        return quotient, remainder

    def divide_exact(self, divisor: "UPoly") -> "UPoly":
        quotient, remainder = self.divmod_exact(divisor)
        if not remainder.is_zero():
            raise NotDivisibleError(f"{divisor} does not divide {self}", remainder=remainder)
        return quotient

    def pseudo_divmod(self, divisor: "UPoly") -> Tuple[int, "UPoly", "UPoly"]:
        """lc^m * self = Q * divisor + R with deg R < deg divisor."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroPolynomialError("division by the zero u-polynomial")
        lead = divisor.leading()
        remainder = self
        quotient = UPoly.zero(self.num_vars)
        steps = 0
        while not remainder.is_zero() and remainder.degree >= divisor.degree:
            gap = remainder.degree - divisor.degree
            step = UPoly.monomial(self.num_vars, gap, remainder.leading())
            quotient = quotient * lead + step
            remainder = remainder * lead - step * divisor
            steps += 1
        return steps, quotient, remainder

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.num_vars == other.num_vars and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.num_vars, self.coeffs))

    def __repr__(self) -> str:
        return f"UPoly({self.num_vars}, '{self}')"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts: List[str] = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            mono = "" if k == 0 else ("u" if k == 1 else f"u^{k}")
            text = str(c)
            if mono and text == "1":
                body = mono
            elif mono and text == "-1":
                body = f"-{mono}"
            elif mono:
                body = f"({text})*{mono}" if len(c) > 1 else f"{text}*{mono}"
            else:
                body = text
            parts.append(body)
        return " + ".join(parts).replace("+ -", "- ")


def require_same_vars(*polys: UPoly) -> Optional[int]:
    counts = {p.num_vars for p in polys}
    if len(counts) > 1:
        raise VariableMismatchError(f"u-polynomials disagree on variable count: {sorted(counts)}")
    return counts.pop() if counts else None

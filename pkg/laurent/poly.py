from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from utils.errors import (
    EvaluationRangeError,
    InputParseError,
    NotDivisibleError,
    PreconditionError,
    VariableMismatchError,
    ZeroPolynomialError,
)

Exponent = Tuple[int, ...]
Turn = Union[Fraction, float]

# exp(2*pi*i*k/4) for k = 0..3, returned exactly
_QUARTER_TURNS = (1 + 0j, 1j, -1 + 0j, -1j)


def turn_to_unit(turn: Turn) -> complex:
    """exp(2*pi*i*turn), reducing exact rational turns before any trig call.

    Turns in (1/2, 1) are computed as conjugates of their mirror so that mirrored
    characters specialize to exactly conjugate values.
    """
    if isinstance(turn, Fraction):
        reduced = turn - math.floor(turn)
        if (reduced * 4).denominator == 1:
            return _QUARTER_TURNS[int(reduced * 4)]
        if reduced > Fraction(1, 2):
            return turn_to_unit(1 - reduced).conjugate()
        return cmath.exp(2j * math.pi * float(reduced))
    reduced_f = float(turn) % 1.0
    if reduced_f > 0.5:
        return cmath.exp(2j * math.pi * (1.0 - reduced_f)).conjugate()
    return cmath.exp(2j * math.pi * reduced_f)


@dataclass(frozen=True)
class UnitMonomial:
    """An invertible element sign * t^exponents of Z[H]."""

    sign: int
    exponents: Exponent

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise PreconditionError(f"unit sign must be +1 or -1, got {self.sign}")

    @property
    def num_vars(self) -> int:
        return len(self.exponents)

    @classmethod
    def one(cls, num_vars: int) -> "UnitMonomial":
        return cls(1, (0,) * num_vars)

    def inverse(self) -> "UnitMonomial":
        return UnitMonomial(self.sign, tuple(-e for e in self.exponents))

    def __mul__(self, other: "UnitMonomial") -> "UnitMonomial":
        if other.num_vars != self.num_vars:
            raise VariableMismatchError(f"unit variable counts differ: {self.num_vars} vs {other.num_vars}")
        return UnitMonomial(self.sign * other.sign, tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def as_poly(self) -> "LaurentPoly":
        return LaurentPoly(self.num_vars, {self.exponents: self.sign})

    def __str__(self) -> str:
        return str(self.as_poly())


class LaurentPoly:
    """Sparse Laurent polynomial with integer coefficients in ``num_vars`` variables.

    Values are immutable; zero coefficients are never stored and iteration is in
    lexicographic exponent order.
    """

    __slots__ = ("num_vars", "_terms", "_key")

    def __init__(self, num_vars: int, terms: Optional[Mapping[Exponent, int]] = None):
        if num_vars < 0:
            raise PreconditionError("num_vars must be non-negative")
        clean: Dict[Exponent, int] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != num_vars:
                raise VariableMismatchError(
                    f"exponent vector {list(exps)} has length {len(exps)}, expected {num_vars}"
                )
            if not isinstance(coeff, int) or isinstance(coeff, bool):
                raise PreconditionError(f"coefficient {coeff!r} is not an integer")
            if coeff != 0:
                clean[exps] = clean.get(exps, 0) + coeff
        self.num_vars = num_vars
        self._terms = {e: c for e, c in clean.items() if c != 0}
        self._key = tuple(sorted(self._terms.items()))

    # construction -----------------------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int) -> "LaurentPoly":
        return cls(num_vars)

    @classmethod
    def constant(cls, num_vars: int, value: int) -> "LaurentPoly":
        return cls(num_vars, {(0,) * num_vars: value})

    @classmethod
    def one(cls, num_vars: int) -> "LaurentPoly":
        return cls.constant(num_vars, 1)

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        exps = tuple(exponents)
        return cls(len(exps), {exps: coeff})

    @classmethod
    def variable(cls, num_vars: int, index: int, power: int = 1) -> "LaurentPoly":
        if not 0 <= index < num_vars:
            raise PreconditionError(f"variable index {index} out of range for {num_vars} variables")
        exps = [0] * num_vars
        exps[index] = power
        return cls(num_vars, {tuple(exps): 1})

    @classmethod
    def from_terms(cls, num_vars: int, terms: Iterable[Mapping[str, object]]) -> "LaurentPoly":
        """Build from the JSON term format ``[{"c": int, "e": [int, ...]}, ...]``."""
        acc: Dict[Exponent, int] = {}
        for idx, term in enumerate(terms):
            try:
                coeff = term["c"]
                exps = tuple(term["e"])  # type: ignore[arg-type]
            except (KeyError, TypeError) as exc:
                raise InputParseError(f"term {idx} must have keys 'c' and 'e'") from exc
            if not isinstance(coeff, int) or isinstance(coeff, bool):
                raise InputParseError(f"term {idx}: coefficient {coeff!r} is not an integer")
            if len(exps) != num_vars or not all(isinstance(e, int) and not isinstance(e, bool) for e in exps):
                raise InputParseError(f"term {idx}: exponent vector {list(exps)} must hold {num_vars} integers")
            acc[exps] = acc.get(exps, 0) + coeff
        return cls(num_vars, acc)

    def to_terms(self) -> List[Dict[str, object]]:
        return [{"c": c, "e": list(e)} for e, c in self._key]

    # inspection ---------------------------------------------------------------------

    def items(self) -> Iterator[Tuple[Exponent, int]]:
        return iter(self._key)

    @property
    def terms(self) -> Dict[Exponent, int]:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, exponents: Sequence[int]) -> int:
        return self._terms.get(tuple(exponents), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise PreconditionError(f"{self} is not a constant")
        return self._terms.get((0,) * self.num_vars, 0)

    def is_positive(self) -> bool:
        return bool(self._terms) and all(c > 0 for c in self._terms.values())

    def has_negative_coefficient(self) -> bool:
        return any(c < 0 for c in self._terms.values())

    def is_unit(self) -> bool:
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def as_unit(self) -> UnitMonomial:
        if not self.is_unit():
            raise PreconditionError(f"{self} is not a unit of the Laurent ring")
        (exps, coeff), = self._terms.items()
        return UnitMonomial(coeff, exps)

    def _check_var(self, var: int) -> None:
        if not 0 <= var < self.num_vars:
            raise PreconditionError(f"variable index {var} out of range for {self.num_vars} variables")

    def min_exponent(self, var: int) -> int:
        self._check_var(var)
        if not self._terms:
            raise ZeroPolynomialError("exponent range of the zero polynomial is undefined")
        return min(e[var] for e in self._terms)

    def max_exponent(self, var: int) -> int:
        self._check_var(var)
        if not self._terms:
            raise ZeroPolynomialError("exponent range of the zero polynomial is undefined")
        return max(e[var] for e in self._terms)

    def spread(self, var: int = 0) -> int:
        """Highest minus lowest exponent of variable ``var``."""
        self._check_var(var)
        if not self._terms:
            raise ZeroPolynomialError("spread of the zero polynomial is undefined")
        return self.max_exponent(var) - self.min_exponent(var)

    def leading_term(self) -> Tuple[Exponent, int]:
        if not self._terms:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        return self._key[-1]

    # arithmetic ---------------------------------------------------------------------

    def _coerce(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.num_vars != self.num_vars:
                raise VariableMismatchError(
                    f"variable count mismatch: {self.num_vars} vs {other.num_vars}"
                )
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return LaurentPoly.constant(self.num_vars, other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in rhs._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(self.num_vars, acc)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.num_vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: int) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other: Union["LaurentPoly", int]) -> "LaurentPoly":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        acc: Dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in rhs._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPoly(self.num_vars, acc)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> "LaurentPoly":
        if power < 0:
            return self.as_unit().inverse().as_poly() ** (-power)
        result = LaurentPoly.one(self.num_vars)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def scale_exact(self, divisor: int) -> "LaurentPoly":
        """Divide every coefficient by ``divisor``; raises NotDivisibleError if inexact."""
        if divisor == 0:
            raise ZeroDivisionError("division of a Laurent polynomial by 0")
        out: Dict[Exponent, int] = {}
        for e, c in self._terms.items():
            if c % divisor:
                raise NotDivisibleError(f"coefficient {c} at exponent {list(e)} is not divisible by {divisor}")
            out[e] = c // divisor
        return LaurentPoly(self.num_vars, out)

    def exact_divide(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient in Z[H]; raises NotDivisibleError when ``divisor`` does not divide."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroPolynomialError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero(self.num_vars)

        # the quotient's exponents live in this box (Z[H] is a domain)
        low = [self.min_exponent(v) - divisor.min_exponent(v) for v in range(self.num_vars)]
        high = [self.max_exponent(v) - divisor.max_exponent(v) for v in range(self.num_vars)]
        if any(lo > hi for lo, hi in zip(low, high)):
            raise NotDivisibleError(f"{divisor} does not divide {self}", remainder=self)

        lead_e, lead_c = divisor.leading_term()
        remainder = dict(self._terms)
        quotient: Dict[Exponent, int] = {}
        while remainder:
            rem_e = max(remainder)
            rem_c = remainder[rem_e]
            shift = tuple(a - b for a, b in zip(rem_e, lead_e))
            if rem_c % lead_c or any(not lo <= s <= hi for s, lo, hi in zip(shift, low, high)):
                raise NotDivisibleError(
                    f"{divisor} does not divide {self}",
                    remainder=LaurentPoly(self.num_vars, remainder),
                )
            factor = rem_c // lead_c
            quotient[shift] = factor
            for e, c in divisor._terms.items():
                target = tuple(a + b for a, b in zip(e, shift))
                value = remainder.get(target, 0) - factor * c
                if value:
                    remainder[target] = value
                else:
                    remainder.pop(target, None)
        return LaurentPoly(self.num_vars, quotient)

    # transformations ----------------------------------------------------------------

    def abs_coefficients(self) -> "LaurentPoly":
        return LaurentPoly(self.num_vars, {e: abs(c) for e, c in self._terms.items()})

    def support(self) -> "LaurentPoly":
        """Same exponents, every coefficient replaced by 1."""
        return LaurentPoly(self.num_vars, {e: 1 for e in self._terms})

    def shift(self, exponents: Sequence[int]) -> "LaurentPoly":
        return LaurentPoly(
            self.num_vars,
            {tuple(a + b for a, b in zip(e, exponents)): c for e, c in self._terms.items()},
        )

    def substitute_units(self, images: Sequence[UnitMonomial]) -> "LaurentPoly":
        """Ring map sending variable j to the unit ``images[j]`` (all in one target ring).

        Covers variable permutations, sign changes t -> -t, collapsing all variables to
        one, and restriction along an integral class t_j -> s^w_j.
        """
        if len(images) != self.num_vars:
            raise VariableMismatchError(f"expected {self.num_vars} images, got {len(images)}")
        target_vars = images[0].num_vars if images else 0
        acc: Dict[Exponent, int] = {}
        for e, c in self._terms.items():
            sign = 1
            out = [0] * target_vars
            for power, image in zip(e, images):
                if power % 2 and image.sign < 0:
                    sign = -sign
                for k, a in enumerate(image.exponents):
                    out[k] += power * a
            key = tuple(out)
            acc[key] = acc.get(key, 0) + sign * c
        return LaurentPoly(target_vars, acc)

    def unit_normal_form(self) -> Tuple[UnitMonomial, "LaurentPoly"]:
        """Return (mu, q) with self = mu * q, q with minimal exponent 0 in every variable
        and a positive leading coefficient."""
        if self.is_zero():
            raise ZeroPolynomialError("unit normal form of the zero polynomial is undefined")
        mins = tuple(self.min_exponent(v) for v in range(self.num_vars))
        q = self.shift(tuple(-m for m in mins))
        sign = 1 if q.leading_term()[1] > 0 else -1
        if sign < 0:
            q = -q
        return UnitMonomial(sign, mins), q

    # evaluation ---------------------------------------------------------------------

    def eval_turns(self, turns: Sequence[Turn]) -> complex:
        """Evaluate at t_j = exp(2*pi*i*turns[j])."""
        if len(turns) != self.num_vars:
            raise VariableMismatchError(f"character has {len(turns)} coordinates, polynomial has {self.num_vars} variables")
        exact = all(isinstance(t, Fraction) for t in turns)
        total = 0j
        for e, c in self._key:
            if exact:
                angle: Turn = sum((Fraction(k) * t for k, t in zip(e, turns)), Fraction(0))
            else:
                angle = math.fsum(k * float(t) for k, t in zip(e, turns))
            total += c * turn_to_unit(angle)
        return total

    def eval_character(self, character: object) -> complex:
        turns = getattr(character, "turns", character)
        return self.eval_turns(turns)  # type: ignore[arg-type]

    def eval_positive(self, xi: Sequence[float]) -> float:
        """Evaluate at t_j = exp(xi[j])."""
        if len(xi) != self.num_vars:
            raise VariableMismatchError(f"direction has {len(xi)} coordinates, polynomial has {self.num_vars} variables")
        values = []
        for e, c in self._key:
            exponent = math.fsum(k * float(x) for k, x in zip(e, xi))
            try:
                values.append(c * math.exp(exponent))
            except OverflowError as exc:
                raise EvaluationRangeError(
                    f"exp({exponent:.6g}) overflows at exponent vector {list(e)}"
                ) from exc
        result = math.fsum(values)
        if not math.isfinite(result):
            raise EvaluationRangeError(f"evaluation of {self} at {list(xi)} is not finite")
        return result

    # dunder -------------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = LaurentPoly.constant(self.num_vars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.num_vars == other.num_vars and self._key == other._key

    def __hash__(self) -> int:
        return hash((self.num_vars, self._key))

    def __repr__(self) -> str:
        return f"LaurentPoly({self.num_vars}, '{self}')"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        names = ["t"] if self.num_vars == 1 else [f"t{i + 1}" for i in range(self.num_vars)]
        parts: List[str] = []
        for e, c in self._key:
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            mono = "*".join(factors)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)


def poly_arith(p: LaurentPoly, q: LaurentPoly, op: str) -> LaurentPoly:
    if p.num_vars != q.num_vars:
        raise VariableMismatchError(f"variable count mismatch: {p.num_vars} vs {q.num_vars}")
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    raise PreconditionError(f"unsupported operation: {op}")

from __future__ import annotations

from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from laurent.poly import Exponent, LaurentPoly, UnitMonomial
from utils.errors import DimensionMismatchError, PreconditionError, VariableMismatchError

Entry = Union[LaurentPoly, int]


class LaurentMatrix:
    """Square matrix over Z[H]. Immutable."""

    __slots__ = ("dim", "num_vars", "_rows")

    def __init__(self, rows: Sequence[Sequence[Entry]], num_vars: Optional[int] = None):
        if not rows:
            raise DimensionMismatchError("matrix dimension must be at least 1")
        dim = len(rows)
        if num_vars is None:
            found = [e.num_vars for row in rows for e in row if isinstance(e, LaurentPoly)]
            if not found:
                raise PreconditionError("num_vars is required when every entry is an integer")
            num_vars = found[0]
        built: List[Tuple[LaurentPoly, ...]] = []
        for i, row in enumerate(rows):
            if len(row) != dim:
                raise DimensionMismatchError(f"row {i + 1} has {len(row)} entries, expected {dim} (square matrix)")
            cells: List[LaurentPoly] = []
            for j, entry in enumerate(row):
                if isinstance(entry, LaurentPoly):
                    if entry.num_vars != num_vars:
                        raise VariableMismatchError(
                            f"entry ({i + 1},{j + 1}) has {entry.num_vars} variables, expected {num_vars}"
                        )
                    cells.append(entry)
                else:
                    cells.append(LaurentPoly.constant(num_vars, int(entry)))
            built.append(tuple(cells))
        self.dim = dim
        self.num_vars = num_vars
        self._rows = tuple(built)

    @classmethod
    def identity(cls, dim: int, num_vars: int) -> "LaurentMatrix":
        one = LaurentPoly.one(num_vars)
        zero = LaurentPoly.zero(num_vars)
        return cls([[one if i == j else zero for j in range(dim)] for i in range(dim)], num_vars)

    @classmethod
    def zeros(cls, dim: int, num_vars: int) -> "LaurentMatrix":
        zero = LaurentPoly.zero(num_vars)
        return cls([[zero] * dim for _ in range(dim)], num_vars)

    @property
    def rows(self) -> Tuple[Tuple[LaurentPoly, ...], ...]:
        return self._rows

    def entry(self, i: int, j: int) -> LaurentPoly:
        return self._rows[i][j]

    def entries(self) -> Iterator[Tuple[int, int, LaurentPoly]]:
        for i, row in enumerate(self._rows):
            for j, value in enumerate(row):
                yield i, j, value

    def map_entries(self, fn: Callable[[LaurentPoly], LaurentPoly]) -> "LaurentMatrix":
        mapped = [[fn(e) for e in row] for row in self._rows]
        num_vars = mapped[0][0].num_vars
        return LaurentMatrix(mapped, num_vars)

    def substitute_units(self, images: Sequence[UnitMonomial]) -> "LaurentMatrix":
        return self.map_entries(lambda e: e.substitute_units(images))

    def support(self) -> "LaurentMatrix":
        return self.map_entries(lambda e: e.support())

    def trace(self) -> LaurentPoly:
        total = LaurentPoly.zero(self.num_vars)
        for i in range(self.dim):
            total = total + self._rows[i][i]
        return total

    def first_negative_entry(self) -> Optional[Tuple[int, int]]:
        for i, j, value in self.entries():
            if value.has_negative_coefficient():
                return i, j
        return None

    def _check_compatible(self, other: "LaurentMatrix") -> None:
        if other.dim != self.dim:
            raise DimensionMismatchError(f"dimension mismatch: {self.dim} vs {other.dim}")
        if other.num_vars != self.num_vars:
            raise VariableMismatchError(f"variable count mismatch: {self.num_vars} vs {other.num_vars}")

    def __add__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        self._check_compatible(other)
        return LaurentMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._rows, other._rows)], self.num_vars
        )

    def __sub__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        self._check_compatible(other)
        return LaurentMatrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self._rows, other._rows)], self.num_vars
        )

    def scale(self, factor: Entry) -> "LaurentMatrix":
        return LaurentMatrix([[e * factor for e in row] for row in self._rows], self.num_vars)

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        return mat_mul(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return self.num_vars == other.num_vars and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.num_vars, self._rows))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(e) for e in row) for row in self._rows)
        return f"LaurentMatrix([{body}])"


def _dot(row: Sequence[LaurentPoly], col: Sequence[LaurentPoly], num_vars: int) -> LaurentPoly:
    acc: Dict[Exponent, int] = {}
    for a, b in zip(row, col):
        if a.is_zero() or b.is_zero():
            continue
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
    return LaurentPoly(num_vars, acc)


def mat_mul(a: LaurentMatrix, b: LaurentMatrix) -> LaurentMatrix:
    a._check_compatible(b)
    cols = list(zip(*b.rows))
    return LaurentMatrix([[_dot(row, col, a.num_vars) for col in cols] for row in a.rows], a.num_vars)


def mat_pow(a: LaurentMatrix, k: int) -> LaurentMatrix:
    """k-th power by binary powering, k >= 1."""
    if k < 1:
        raise PreconditionError(f"matrix power exponent must be >= 1, got {k}")
    result: Optional[LaurentMatrix] = None
    base = a
    while k:
        if k & 1:
            result = base if result is None else mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    assert result is not None
    return result


def determinant(m: LaurentMatrix) -> LaurentPoly:
    """Fraction-free cofactor expansion along the first row."""

    def _det(rows: List[Tuple[LaurentPoly, ...]], cols: Tuple[int, ...]) -> LaurentPoly:
        if len(cols) == 1:
            return rows[0][cols[0]]
        total = LaurentPoly.zero(m.num_vars)
        head, rest = rows[0], rows[1:]
        for pos, col in enumerate(cols):
            entry = head[col]
            if entry.is_zero():
                continue
            minor = _det(rest, cols[:pos] + cols[pos + 1:])
            term = entry * minor
            total = total + term if pos % 2 == 0 else total - term
        return total

    return _det(list(m.rows), tuple(range(m.dim)))

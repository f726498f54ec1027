"""Reduced Burau and Gassner images of braid words.

Convention, fixed once and checked by the test suite:

* unreduced generator image: sigma_i -> I + block [[1 - x, x], [1, 0]] on rows/cols i, i+1,
  with x = t (Burau) or x = t_{i+1} (Gassner);
* every image fixes the all-ones vector; the reduced matrix is the action on the quotient,
  R_ij = M_ij - M_nj for i, j < n;
* afterwards every variable is replaced by its negative (``BURAU_VARIABLE_SIGN``);
* words multiply left to right.

With this choice the characteristic polynomial of s1 s2^-1 on 3 strands is
u^2 - (1 + t + t^-1) u + 1, and the matrix at t = 1 is [[2, 1], [1, 1]].
"""

from __future__ import annotations

from typing import Dict, List, Sequence

from braid.word import BraidWord
from laurent.poly import LaurentPoly, UnitMonomial
from lpmat.charpoly import mat_inverse
from lpmat.matrix import LaurentMatrix, mat_mul
from utils.errors import NotPureBraidError

BURAU_VARIABLE_SIGN = -1

BURAU_CONVENTION = {
    "generator_block": "[[1 - x, x], [1, 0]]",
    "burau_variable": "t",
    "gassner_variable": "t_{i+1} for sigma_i",
    "reduction": "quotient by the fixed all-ones vector, R_ij = M_ij - M_nj",
    "variable_sign": BURAU_VARIABLE_SIGN,
    "composition": "left-to-right",
}


def _generator(strands: int, index: int, x: LaurentPoly) -> LaurentMatrix:
    n = strands
    one = LaurentPoly.one(x.num_vars)
    zero = LaurentPoly.zero(x.num_vars)
    rows: List[List[LaurentPoly]] = [[one if r == c else zero for c in range(n)] for r in range(n)]
    i = index - 1
    rows[i][i] = one - x
    rows[i][i + 1] = x
    rows[i + 1][i] = one
    rows[i + 1][i + 1] = zero
    return LaurentMatrix(rows, x.num_vars)


def reduce_fixed_vector(m: LaurentMatrix) -> LaurentMatrix:
    """Action on the quotient by the all-ones vector (row sums must be 1)."""
    last = m.dim - 1
    return LaurentMatrix(
        [[m.entry(i, j) - m.entry(last, j) for j in range(last)] for i in range(last)], m.num_vars
    )


def _signed(num_vars: int) -> List[UnitMonomial]:
    return [
        UnitMonomial(BURAU_VARIABLE_SIGN, tuple(1 if k == j else 0 for k in range(num_vars)))
        for j in range(num_vars)
    ]


def _permuted(images: Sequence[int]) -> List[UnitMonomial]:
    """t_j -> t_{images[j]}."""
    n = len(images)
    return [UnitMonomial(1, tuple(1 if k == images[j] else 0 for k in range(n))) for j in range(n)]


def reduced_burau(word: BraidWord) -> LaurentMatrix:
    """One-variable reduced Burau matrix of dimension strands - 1."""
    n = word.strands
    t = LaurentPoly.variable(1, 0)
    cache: Dict[int, LaurentMatrix] = {}
    result = LaurentMatrix.identity(n, 1)
    for letter in word.letters:
        if letter not in cache:
            image = _generator(n, abs(letter), t)
            cache[letter] = image if letter > 0 else mat_inverse(image)
        result = mat_mul(result, cache[letter])
    return reduce_fixed_vector(result).substitute_units(_signed(1))


def format_permutation(perm: Sequence[int]) -> str:
    """Cycle notation on strands 1..n, fixed points omitted."""
    seen = set()
    cycles: List[str] = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle = []
        k = start
        while k not in seen:
            seen.add(k)
            cycle.append(str(k + 1))
            k = perm[k]
        cycles.append("(" + " ".join(cycle) + ")")
    return "".join(cycles) or "()"


def gassner(word: BraidWord) -> LaurentMatrix:
    """Reduced Gassner matrix in t_1..t_n for a pure braid.

    Elements of GL_n(Z[H]) x S_n multiply as (M, p)(N, s) = (M p(N), p s), where p(N)
    renames t_j to t_p(j); sigma_i maps to (generator with x = t_{i+1}, s_i).
    """
    perm = word.permutation()
    if perm != tuple(range(word.strands)):
        cycles = format_permutation(perm)
        raise NotPureBraidError(
            f"braid '{word}' is not pure: it permutes strands as {cycles}",
            permutation=tuple(p + 1 for p in perm),
        )
    n = word.strands
    cache: Dict[int, LaurentMatrix] = {}
    result = LaurentMatrix.identity(n, n)
    current: List[int] = list(range(n))
    for letter in word.letters:
        i = abs(letter)
        if letter not in cache:
            image = _generator(n, i, LaurentPoly.variable(n, i))
            if letter < 0:
                swap = list(range(n))
                swap[i - 1], swap[i] = swap[i], swap[i - 1]
                image = mat_inverse(image).substitute_units(_permuted(swap))
            cache[letter] = image
        result = mat_mul(result, cache[letter].substitute_units(_permuted(current)))
        current[i - 1], current[i] = current[i], current[i - 1]
    return reduce_fixed_vector(result).substitute_units(_signed(n))


def collapse_variables(m: LaurentMatrix) -> LaurentMatrix:
    """Substitute t_j -> t for every j."""
    return m.substitute_units([UnitMonomial(1, (1,))] * m.num_vars)

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import List, Tuple

from laurent.poly import Turn
from utils.errors import InputParseError, PreconditionError


def _reduce_turn(turn: Turn) -> Turn:
    if isinstance(turn, Fraction):
        return turn - math.floor(turn)
    if isinstance(turn, int):
        return Fraction(0)
    value = float(turn)
    if not math.isfinite(value):
        raise InputParseError(f"turn must be finite, got {turn}")
    return value % 1.0


@dataclass(frozen=True)
class Character:
    """A point of Hom(H, S^1) in turns: exact Fractions are torsion coordinates."""

    turns: Tuple[Turn, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "turns", tuple(_reduce_turn(t) for t in self.turns))

    @classmethod
    def trivial(cls, num_vars: int) -> "Character":
        return cls(tuple(Fraction(0) for _ in range(num_vars)))

    @classmethod
    def parse(cls, text: str) -> "Character":
        """Parse ``"1/3,0"`` or ``"0.618,1/2"``."""
        pieces = [p.strip() for p in text.split(",")]
        if not pieces or any(not p for p in pieces):
            raise InputParseError(f"character needs comma-separated turns, got {text!r}")
        turns: List[Turn] = []
        for piece in pieces:
            try:
                if "/" in piece or piece.lstrip("+-").isdigit():
                    turns.append(Fraction(piece))
                else:
                    turns.append(float(piece))
            except (ValueError, ZeroDivisionError) as exc:
                raise InputParseError(f"bad turn {piece!r} in character {text!r}") from exc
        return cls(tuple(turns))

    @property
    def num_vars(self) -> int:
        return len(self.turns)

    @property
    def is_torsion(self) -> bool:
        return all(isinstance(t, Fraction) for t in self.turns)

    def is_trivial(self) -> bool:
        return all(t == 0 for t in self.turns)

    def order(self) -> int:
        if not self.is_torsion:
            raise PreconditionError(f"character {self} is not torsion")
        return math.lcm(*(t.denominator for t in self.turns)) if self.turns else 1  # type: ignore[union-attr]

    def conjugate(self) -> "Character":
        return Character(tuple(-t for t in self.turns))

    def distance_to_trivial(self) -> float:
        """Sup over coordinates of the circular distance to 0, in turns."""
        return max((min(float(t), 1.0 - float(t)) for t in self.turns), default=0.0)

    def labels(self) -> List[str]:
        return [str(t) if isinstance(t, Fraction) else repr(t) for t in self.turns]

    def __str__(self) -> str:
        return "(" + ", ".join(self.labels()) + ")"


def farey_turns(max_order: int) -> List[Fraction]:
    if max_order < 1:
        raise PreconditionError(f"max order must be >= 1, got {max_order}")
    return sorted({Fraction(a, b) for b in range(1, max_order + 1) for a in range(b)})


def torsion_characters(num_vars: int, max_order: int) -> List[Character]:
    """Every character whose coordinates are a/b with b <= max_order, sorted lexicographically."""
    coords = farey_turns(max_order)
    return [Character(turns) for turns in product(coords, repeat=num_vars)]


def grid_characters(num_vars: int, points: int) -> List[Character]:
    """Characters with turns k/points in grid-index (lexicographic) order."""
    coords = [Fraction(k, points) for k in range(points)]
    return [Character(turns) for turns in product(coords, repeat=num_vars)]


def require_rank(character: Character, num_vars: int) -> None:
    if character.num_vars != num_vars:
        raise PreconditionError(
            f"character {character} has {character.num_vars} coordinates, object has {num_vars} variables"
        )


def parse_direction(text: str) -> Tuple[float, ...]:
    try:
        values = tuple(float(p) for p in text.split(","))
    except ValueError as exc:
        raise InputParseError(f"bad real vector {text!r}") from exc
    if not all(math.isfinite(v) for v in values):
        raise InputParseError(f"real vector {text!r} has non-finite entries")
    return values

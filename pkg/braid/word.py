from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Tuple

from utils.errors import InputParseError

_TOKEN = re.compile(r"^s(\d+)(?:\^(-?1))?$")


@dataclass(frozen=True)
class BraidWord:
    """Signed generator indices; +k is sigma_k, -k its inverse. Read left to right."""

    strands: int
    letters: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.strands < 2:
            raise InputParseError(f"a braid needs at least 2 strands, got {self.strands}")
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for letter in self.letters:
            if letter == 0 or abs(letter) > self.strands - 1:
                raise InputParseError(
                    f"generator s{abs(letter)} is out of range for {self.strands} strands (1..{self.strands - 1})"
                )

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise InputParseError(f"cannot concatenate braids on {self.strands} and {other.strands} strands")
        return BraidWord(self.strands, self.letters + other.letters)

    def permutation(self) -> Tuple[int, ...]:
        """Composite of the transpositions s_|k|, in word order, as a 0-based tuple."""
        perm = list(range(self.strands))
        for letter in self.letters:
            i = abs(letter) - 1
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
        return tuple(perm)

    def is_pure(self) -> bool:
        return self.permutation() == tuple(range(self.strands))

    def __str__(self) -> str:
        return " ".join(f"s{x}" if x > 0 else f"s{-x}^-1" for x in self.letters)


def parse_braid(text: str, strands: int) -> BraidWord:
    letters = []
    for token in text.split():
        match = _TOKEN.match(token)
        if match is None:
            raise InputParseError(f"unknown braid token {token!r} (expected s<k> or s<k>^-1)")
        index = int(match.group(1))
        power = int(match.group(2) or 1)
        letters.append(index * power)
    return BraidWord(strands, tuple(letters))

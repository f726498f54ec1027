"""Braid words and their reduced Burau and Gassner matrices."""

from braid.burau import BURAU_CONVENTION, BURAU_VARIABLE_SIGN, collapse_variables, gassner, reduced_burau
from braid.word import BraidWord, parse_braid

__all__ = [
    "BURAU_CONVENTION",
    "BURAU_VARIABLE_SIGN",
    "BraidWord",
    "collapse_variables",
    "gassner",
    "parse_braid",
    "reduced_burau",
]

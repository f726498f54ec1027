"""Exact sparse arithmetic in the integral Laurent ring Z[H]."""

from laurent.poly import Exponent, LaurentPoly, UnitMonomial, poly_arith, turn_to_unit

__all__ = ["Exponent", "LaurentPoly", "UnitMonomial", "poly_arith", "turn_to_unit"]

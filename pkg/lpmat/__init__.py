"""Square matrices over Z[H], u-polynomials and Perron-Frobenius certification."""

from lpmat.charpoly import char_poly, mat_inverse
from lpmat.matrix import LaurentMatrix, determinant, mat_mul, mat_pow
from lpmat.perron import PFReport, primitivity, uniform_spread_exponent, wielandt_bound
from lpmat.upoly import UPoly

__all__ = [
    "LaurentMatrix",
    "PFReport",
    "UPoly",
    "char_poly",
    "determinant",
    "mat_inverse",
    "mat_mul",
    "mat_pow",
    "primitivity",
    "uniform_spread_exponent",
    "wielandt_bound",
]

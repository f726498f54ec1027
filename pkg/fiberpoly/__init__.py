"""Teichmuller polynomials, Alexander divisibility and the dilatation function."""

from fiberpoly.alexander import DivisibilityReport, check_divisibility, divides_up_to_unit
from fiberpoly.dilatation import dilatation, dilatation_profile, restrict_to_class
from fiberpoly.teichmuller import FiberedFaceData, ThetaDiagnostics, teichmuller, validate_theta

__all__ = [
    "DivisibilityReport",
    "FiberedFaceData",
    "ThetaDiagnostics",
    "check_divisibility",
    "dilatation",
    "dilatation_profile",
    "divides_up_to_unit",
    "restrict_to_class",
    "teichmuller",
    "validate_theta",
]

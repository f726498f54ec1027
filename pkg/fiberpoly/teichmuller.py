from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from lpmat.charpoly import char_poly
from lpmat.matrix import LaurentMatrix
from lpmat.upoly import UPoly
from utils.errors import NotDivisibleError, VariableMismatchError, ZeroPolynomialError


def teichmuller(edge_matrix: LaurentMatrix, vertex_matrix: LaurentMatrix) -> UPoly:
    """char_poly(P_E) / char_poly(P_V), exact; the divisor is monic."""
    if edge_matrix.num_vars != vertex_matrix.num_vars:
        raise VariableMismatchError(
            f"edge matrix has {edge_matrix.num_vars} variables, vertex matrix has {vertex_matrix.num_vars}"
        )
    edge_poly = char_poly(edge_matrix)
    vertex_poly = char_poly(vertex_matrix)
    quotient, remainder = edge_poly.divmod_exact(vertex_poly)
    if not remainder.is_zero():
        raise NotDivisibleError(
            f"not a fibered-face pair: char_poly(P_V) = {vertex_poly} leaves remainder {remainder}",
            remainder=remainder,
        )
    return quotient


@dataclass(frozen=True)
class FiberedFaceData:
    edge_matrix: LaurentMatrix
    vertex_matrix: LaurentMatrix
    theta: UPoly
    alexander: Optional[UPoly] = None

    @classmethod
    def build(
        cls,
        edge_matrix: LaurentMatrix,
        vertex_matrix: LaurentMatrix,
        alexander: Optional[UPoly] = None,
    ) -> "FiberedFaceData":
        return cls(edge_matrix, vertex_matrix, teichmuller(edge_matrix, vertex_matrix), alexander)

    def division_holds(self) -> bool:
        return self.theta * char_poly(self.vertex_matrix) == char_poly(self.edge_matrix)


@dataclass(frozen=True)
class VariableDiagnostic:
    index: int
    dependent: bool
    max_spread: int
    exponent_range: tuple

    def to_dict(self) -> Dict[str, Any]:
        return {
            "variable": self.index + 1,
            "dependent": self.dependent,
            "max_coefficient_spread": self.max_spread,
            "exponent_range": list(self.exponent_range),
        }


@dataclass(frozen=True)
class ThetaDiagnostics:
    variables: List[VariableDiagnostic] = field(default_factory=list)

    @property
    def flagged(self) -> List[int]:
        return [v.index for v in self.variables if not v.dependent]

    @property
    def ok(self) -> bool:
        return not self.flagged

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "flagged": [i + 1 for i in self.flagged],
            "variables": [v.to_dict() for v in self.variables],
        }


def validate_theta(theta: UPoly) -> ThetaDiagnostics:
    """Whether the coefficients of theta depend on each t_i after unit normalization.

    No unit makes every coefficient independent of t_i exactly when the t_i-exponents
    across all coefficients take more than one value.
    """
    if theta.is_zero():
        raise ZeroPolynomialError("validate_theta needs a nonzero polynomial")
    _, normalized = theta.unit_normalize()
    report: List[VariableDiagnostic] = []
    for var in range(theta.num_vars):
        present = [c for c in normalized.coeffs if not c.is_zero()]
        low = min(c.min_exponent(var) for c in present)
        high = max(c.max_exponent(var) for c in present)
        spread = max(c.spread(var) for c in present)
        report.append(VariableDiagnostic(var, high > low, spread, (low, high)))
    return ThetaDiagnostics(report)

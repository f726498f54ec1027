from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field, StrictInt, ValidationError, model_validator

from laurent.poly import LaurentPoly
from lpmat.matrix import LaurentMatrix
from lpmat.upoly import UPoly
from utils.errors import InputParseError

SpectralValue = Union[LaurentMatrix, UPoly]


class TermModel(BaseModel):
    c: StrictInt
    e: List[StrictInt]


class MatrixModel(BaseModel):
    variables: List[str] = Field(..., min_length=1)
    dim: int = Field(..., ge=1)
    entries: List[List[List[TermModel]]]

    @model_validator(mode="after")
    def _check_shape(self) -> "MatrixModel":
        if len(self.entries) != self.dim or any(len(row) != self.dim for row in self.entries):
            raise ValueError(f"entries must form a {self.dim}x{self.dim} array (square matrix)")
        return self


class UPolyModel(BaseModel):
    variables: List[str] = Field(..., min_length=1)
    u_coeffs: List[List[TermModel]]


class ScanSummaryModel(BaseModel):
    K: float
    delta: Optional[float]
    exclusion_radius: float = Field(..., ge=0.0, lt=0.5)
    grid: int = Field(..., ge=2)
    num_points: int
    extremum: Optional[List[str]] = None
    failed_points: List[Dict[str, Any]] = Field(default_factory=list)
    note: str = ""


@dataclass(frozen=True)
class Document:
    variables: List[str]
    value: SpectralValue

    @property
    def kind(self) -> str:
        return "matrix" if isinstance(self.value, LaurentMatrix) else "upoly"


def default_variables(num_vars: int) -> List[str]:
    return ["t"] if num_vars == 1 else [f"t{k + 1}" for k in range(num_vars)]


def _poly(num_vars: int, terms: List[TermModel], where: str) -> LaurentPoly:
    try:
        return LaurentPoly.from_terms(num_vars, [t.model_dump() for t in terms])
    except InputParseError as exc:
        raise InputParseError(f"{where}: {exc}") from exc


def parse_document(text: str, source: str = "<stdin>") -> Document:
    """Parse a matrix or u-polynomial document; the kind is told by 'entries' vs 'u_coeffs'."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputParseError(f"{source}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(raw, dict):
        raise InputParseError(f"{source}: expected a JSON object")
    try:
        if "entries" in raw:
            model = MatrixModel.model_validate(raw)
            h = len(model.variables)
            rows = [
                [_poly(h, cell, f"{source}: entry ({i + 1},{j + 1})") for j, cell in enumerate(row)]
                for i, row in enumerate(model.entries)
            ]
            return Document(list(model.variables), LaurentMatrix(rows, h))
        if "u_coeffs" in raw:
            upoly_model = UPolyModel.model_validate(raw)
            h = len(upoly_model.variables)
            coeffs = [_poly(h, c, f"{source}: coefficient of u^{k}") for k, c in enumerate(upoly_model.u_coeffs)]
            return Document(list(upoly_model.variables), UPoly(h, coeffs))
    except ValidationError as exc:
        first = exc.errors()[0]
        location = ".".join(str(p) for p in first.get("loc", ()))
        raise InputParseError(f"{source}: {location}: {first.get('msg')}") from exc
    raise InputParseError(f"{source}: document has neither 'entries' nor 'u_coeffs'")


def matrix_payload(variables: List[str], m: LaurentMatrix) -> Dict[str, Any]:
    return {
        "variables": list(variables),
        "dim": m.dim,
        "entries": [[e.to_terms() for e in row] for row in m.rows],
    }


def upoly_payload(variables: List[str], p: UPoly) -> Dict[str, Any]:
    return {"variables": list(variables), "u_coeffs": [c.to_terms() for c in p.coeffs]}


def document_payload(doc: Document) -> Dict[str, Any]:
    if isinstance(doc.value, LaurentMatrix):
        return matrix_payload(doc.variables, doc.value)
    return upoly_payload(doc.variables, doc.value)


def complex_pair(z: complex) -> List[float]:
    return [float(z.real), float(z.imag)]

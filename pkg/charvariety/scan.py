from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np

from charvariety.character import Character, grid_characters
from charvariety.spectrum import (
    SpectralObject,
    SpectrumReport,
    specialize_matrix,
    specialize_upoly,
    spectrum,
    spectrum_from_coeffs,
)
from lpmat.charpoly import char_poly
from lpmat.matrix import LaurentMatrix
from lpmat.upoly import UPoly
from utils.errors import NumericCheckError, PreconditionError
from utils.settings import Settings, load_settings

DELTA_NOTE = "delta is the smallest gap K - rho observed on the grid outside the exclusion radius, not a proven bound"


@dataclass(frozen=True)
class FailedPoint:
    index: int
    character: Character
    error_type: str
    message: str

    def to_dict(self) -> Dict[str, Any]:
        return {
            "index": self.index,
            "character": self.character.labels(),
            "error_type": self.error_type,
            "message": self.message,
        }


@dataclass
class ScanReport:
    grid: int
    exclusion_radius: float
    K: float
    delta: Optional[float]
    points: List[Optional[SpectrumReport]]
    characters: List[Character]
    failed_points: List[FailedPoint] = field(default_factory=list)
    extremum: Optional[Character] = None

    @property
    def num_vars(self) -> int:
        return self.characters[0].num_vars

    def summary(self) -> Dict[str, Any]:
        return {
            "K": self.K,
            "delta": self.delta,
            "exclusion_radius": self.exclusion_radius,
            "grid": self.grid,
            "num_points": len(self.points),
            "extremum": self.extremum.labels() if self.extremum is not None else None,
            "failed_points": [f.to_dict() for f in self.failed_points],
            "note": DELTA_NOTE,
        }


def _evaluate(
    index: int,
    character: Character,
    obj: SpectralObject,
    poly: UPoly,
    settings: Settings,
) -> Union[SpectrumReport, FailedPoint]:
    try:
        matrix = specialize_matrix(obj, character) if isinstance(obj, LaurentMatrix) else None
        return spectrum_from_coeffs(specialize_upoly(poly, character), character, settings, matrix)
    except (NumericCheckError, PreconditionError) as exc:
        return FailedPoint(index, character, type(exc).__name__, str(exc))


def rho_scan(
    obj: SpectralObject,
    grid: int,
    exclusion_radius: float = 0.0,
    jobs: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> ScanReport:
    """Spectra on the g^h grid of exact torsion characters, in grid-index order."""
    if grid < 2:
        raise PreconditionError(f"grid must have at least 2 points per dimension, got {grid}")
    if not 0.0 <= exclusion_radius < 0.5:
        raise PreconditionError(f"exclusion radius must lie in [0, 1/2), got {exclusion_radius}")
    settings = settings or load_settings()
    workers = jobs if jobs is not None else settings.scan_jobs
    if workers < 1:
        raise PreconditionError(f"jobs must be >= 1, got {workers}")

    poly = char_poly(obj) if isinstance(obj, LaurentMatrix) else obj
    characters = grid_characters(obj.num_vars, grid)
    indexed = list(enumerate(characters))

    def task(item: Tuple[int, Character]) -> Union[SpectrumReport, FailedPoint]:
        return _evaluate(item[0], item[1], obj, poly, settings)

    if workers == 1:
        outcomes = [task(item) for item in indexed]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(task, indexed))

    points: List[Optional[SpectrumReport]] = []
    failed: List[FailedPoint] = []
    for outcome in outcomes:
        if isinstance(outcome, FailedPoint):
            failed.append(outcome)
            points.append(None)
        else:
            points.append(outcome)

    trivial_point = points[0]
    if trivial_point is None:
        raise NumericCheckError(f"spectrum at the trivial character failed: {failed[0].message}")
    K = trivial_point.rho

    delta: Optional[float] = None
    extremum: Optional[Character] = None
    best = -np.inf
    for character, point in zip(characters, points):
        if point is None or character.distance_to_trivial() <= exclusion_radius:
            continue
        if point.rho > best:
            best, extremum = point.rho, character
    if extremum is not None:
        delta = K - best
    return ScanReport(grid, exclusion_radius, K, delta, points, characters, failed, extremum)


def format_number(value: float) -> str:
    return format(float(value), ".12g")


def scan_csv(report: ScanReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([f"turn_{k + 1}" for k in range(report.num_vars)] + ["rho", "gamma"])
    for character, point in zip(report.characters, report.points):
        turns = [format_number(t) for t in character.turns]
        if point is None:
            writer.writerow(turns + ["nan", "nan"])
        else:
            writer.writerow(turns + [format_number(point.rho), format_number(point.gamma)])
    return buffer.getvalue()


def write_scan_csv(report: ScanReport, path: Union[str, Path]) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with target.open("w", encoding="utf-8", newline="") as handle:
        handle.write(scan_csv(report))
    return target


def write_plot(report: ScanReport, prefix: Union[str, Path]) -> Tuple[Path, Path]:
    """Write ``<prefix>.dat`` (whitespace columns) and a gnuplot script ``<prefix>.gp``."""
    base = Path(prefix)
    base.parent.mkdir(parents=True, exist_ok=True)
    data_path = base.with_suffix(".dat")
    script_path = base.with_suffix(".gp")
    lines = []
    for character, point in zip(report.characters, report.points):
        if point is None:
            continue
        cols = [format_number(t) for t in character.turns] + [format_number(point.rho)]
        lines.append(" ".join(cols))
    data_path.write_text("\n".join(lines) + "\n", encoding="utf-8")

    if report.num_vars == 1:
        body = f"plot '{data_path.name}' using 1:2 with lines title 'rho'\n"
    elif report.num_vars == 2:
        body = f"set dgrid3d {report.grid},{report.grid}\nsplot '{data_path.name}' using 1:2:3 with pm3d title 'rho'\n"
    else:
        body = f"# {report.num_vars} turn columns; rho is column {report.num_vars + 1}\n"
    header = (
        "set terminal pngcairo size 900,600\n"
        f"set output '{base.name}.png'\n"
        f"set title 'spectral radius, K = {format_number(report.K)}'\n"
        "set xlabel 'turn_1'\n"
    )
    script_path.write_text(header + body, encoding="utf-8")
    return data_path, script_path


@dataclass(frozen=True)
class CoverGapReport:
    order: int
    K: float
    second: float
    gamma_cover: float
    witness: Optional[Character]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "order": self.order,
            "K": self.K,
            "second": self.second,
            "gamma_cover": self.gamma_cover,
            "witness": self.witness.labels() if self.witness is not None else None,
        }


def cover_gap(
    obj: SpectralObject,
    order: int,
    jobs: Optional[int] = None,
    settings: Optional[Settings] = None,
) -> CoverGapReport:
    """Top gap of the lifted action on the cover with deck group (Z/order)^h.

    Its spectrum is the union of the spectra over the characters of turns k/order.
    """
    if order < 1:
        raise PreconditionError(f"cover order must be >= 1, got {order}")
    if order == 1:
        base = spectrum(obj, Character.trivial(obj.num_vars), settings)
        second = base.eigenvalue_moduli[1] if len(base.eigenvalue_moduli) > 1 else 0.0
        return CoverGapReport(1, base.rho, second, base.rho - second, None)

    report = rho_scan(obj, order, 0.0, jobs, settings)
    if report.failed_points:
        first = report.failed_points[0]
        raise NumericCheckError(f"cover spectrum failed at {first.character}: {first.message}")
    base = report.points[0]
    assert base is not None
    second = base.eigenvalue_moduli[1] if len(base.eigenvalue_moduli) > 1 else 0.0
    witness: Optional[Character] = Character.trivial(obj.num_vars) if len(base.eigenvalue_moduli) > 1 else None
    for character, point in zip(report.characters[1:], report.points[1:]):
        assert point is not None
        if point.rho > second:
            second, witness = point.rho, character
    return CoverGapReport(order, report.K, second, report.K - second, witness)

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, TextIO, Tuple

from braid.burau import BURAU_CONVENTION, gassner, reduced_burau
from braid.word import parse_braid
from charvariety.certificate import gap_certificate, verify_certificate
from charvariety.character import Character, parse_direction
from charvariety.scan import cover_gap, rho_scan, write_plot, write_scan_csv
from charvariety.spectrum import specialize_matrix, specialize_upoly, spectrum
from cli.schemas import (
    Document,
    ScanSummaryModel,
    complex_pair,
    default_variables,
    matrix_payload,
    parse_document,
    upoly_payload,
)
from fiberpoly.alexander import check_divisibility
from fiberpoly.dilatation import dilatation, dilatation_profile, ray
from fiberpoly.teichmuller import teichmuller, validate_theta
from lpmat.charpoly import char_poly
from lpmat.matrix import LaurentMatrix, mat_pow
from lpmat.perron import primitivity, uniform_spread_exponent
from lpmat.upoly import UPoly
from metadata.store import append_run_trace, finish_run_trace, new_run_trace
from utils.errors import EXIT_OK, EXIT_USAGE, InputParseError, PreconditionError, exit_code_for
from utils.settings import Settings, load_settings

Payload = Dict[str, Any]
Summary = Dict[str, Any]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


class Streams:
    def __init__(self, stdin: TextIO, stdout: TextIO, stderr: TextIO):
        self.stdin = stdin
        self.stdout = stdout
        self.stderr = stderr

    def read(self, path: str) -> Tuple[str, str]:
        if path == "-":
            return self.stdin.read(), "<stdin>"
        try:
            return Path(path).read_text(encoding="utf-8"), path
        except OSError as exc:
            raise InputParseError(f"cannot read {path}: {exc.strerror}") from exc

    def load(self, path: str) -> Document:
        text, source = self.read(path)
        return parse_document(text, source)


def _matrix(doc: Document, command: str) -> LaurentMatrix:
    if not isinstance(doc.value, LaurentMatrix):
        raise PreconditionError(f"{command} needs a matrix document, got a u-polynomial")
    return doc.value


def _upoly(doc: Document, command: str) -> UPoly:
    if not isinstance(doc.value, UPoly):
        raise PreconditionError(f"{command} needs a u-polynomial document, got a matrix")
    return doc.value


def _character(args: argparse.Namespace, num_vars: int) -> Character:
    if args.char is None:
        return Character.trivial(num_vars)
    return Character.parse(args.char)


def _scales(text: str) -> List[float]:
    return list(parse_direction(text))


# ----------------------------
# Subcommands
# ----------------------------
def cmd_pf_check(args: argparse.Namespace, settings: Settings, io: Streams) -> Tuple[Payload, Summary]:
    m = _matrix(io.load(args.input), "pf-check")
    report = primitivity(m)
    payload = report.to_dict()
    if args.spread_var is not None:
        payload["uniform_spread_exponent"] = uniform_spread_exponent(m, args.spread_var - 1)
    return payload, {"primitive": report.primitive, "exponent": report.exponent}


def cmd_charpoly(args: argparse.Namespace, settings: Settings, io: Streams) -> Tuple[Payload, Summary]:
    doc = io.load(args.input)
    poly = char_poly(_matrix(doc, "charpoly"))
    return upoly_payload(doc.variables, poly), {"degree": poly.degree}


def cmd_specialize(args: argparse.Namespace, settings: Settings, io: Streams) -> Tuple[Payload, Summary]:
    doc = io.load(args.input)
    character = Character.parse(args.char)
    if isinstance(doc.value, LaurentMatrix):
        values = specialize_matrix(doc.value, character)
        payload = {"character": character.labels(), "matrix": [[complex_pair(z) for z in row] for row in values]}
    else:
        coeffs = specialize_upoly(doc.value, character)
        payload = {"character": character.labels(), "coeffs": [complex_pair(z) for z in coeffs]}
    return payload, {"kind": doc.kind}


def cmd_spectrum(args: argparse.Namespace, settings: Settings, io: Streams) -> Tuple[Payload, Summary]:
    doc = io.load(args.input)
    report = spectrum(doc.value, _character(args, doc.value.num_vars), settings)
    return report.to_dict(), {"rho": report.rho, "gamma": report.gamma}


def cmd_scan(args: argparse.Namespace, settings: Settings, io: Streams) -> Tuple[Payload, Summary]:
    doc = io.load(args.input)
    report = rho_scan(doc.value, args.grid, args.exclude, args.jobs, settings)
    payload = ScanSummaryModel(**report.summary()).model_dump()
    if args.csv:
        payload["csv"] = str(write_scan_csv(report, args.csv))
    if args.plot:
        data_path, script_path = write_plot(report, args.plot)
        payload["plot"] = {"data": str(data_path), "script": str(script_path)}
    return payload, {"K": report.K, "delta": report.delta, "failed": len(report.failed_points)}


def cmd_gap_cert(args: argparse.Namespace, settings: Settings, io: Streams) -> Tuple[Payload, Summary]:
    m = _matrix(io.load(args.input), "gap-cert")
    power = 1
    if args.power is not None:
        power = args.power
    elif args.spread_var is not None:
        power = uniform_spread_exponent(m, args.spread_var - 1)
    if power > 1:
        m = mat_pow(m, power)
    character = Character.parse(args.char)
    constant = gap_certificate(m, character)
    payload: Payload = {"character": character.labels(), "power": power, "C": constant}
    if args.verify is not None:
        payload["verification"] = verify_certificate(m, character, args.verify, settings=settings).to_dict()
    return payload, {"C": constant, "power": power}


def cmd_braid(args: argparse.Namespace, settings: Settings, io: Streams) -> Tuple[Payload, Summary]:
    word = parse_braid(args.word, args.strands)
    m = gassner(word) if args.gassner else reduced_burau(word)
    variables = default_variables(m.num_vars)
    if args.charpoly:
        return upoly_payload(variables, char_poly(m)), {"letters": len(word.letters)}
    return matrix_payload(variables, m), {"letters": len(word.letters), "convention": BURAU_CONVENTION}


def cmd_teich(args: argparse.Namespace, settings: Settings, io: Streams) -> Tuple[Payload, Summary]:
    edge = io.load(args.edge)
    vertex = io.load(args.vertex)
    theta = teichmuller(_matrix(edge, "teich"), _matrix(vertex, "teich"))
    return upoly_payload(edge.variables, theta), {"degree": theta.degree}


def cmd_divides(args: argparse.Namespace, settings: Settings, io: Streams) -> Tuple[Payload, Summary]:
    a_doc = io.load(args.a)
    t_doc = io.load(args.t)
    report = check_divisibility(
        _upoly(a_doc, "divides"),
        _upoly(t_doc, "divides"),
        samples=args.samples,
        seed=args.seed,
        jobs=args.jobs or 1,
        settings=settings,
    )
    payload = report.to_dict()
    payload["quotient"] = upoly_payload(t_doc.variables, report.quotient) if report.quotient is not None else None
    return payload, {"divides": report.divides, "corroborated": report.corroborated}


def cmd_dilatation(args: argparse.Namespace, settings: Settings, io: Streams) -> Tuple[Payload, Summary]:
    theta = _upoly(io.load(args.input), "dilatation")
    direction = parse_direction(args.xi) if args.xi else None
    if args.ray:
        if direction is None:
            direction = tuple(1.0 for _ in range(theta.num_vars))
        profile = dilatation_profile(theta, ray(direction, _scales(args.ray)), settings)
        payload = {
            "direction": list(direction),
            "profile": [{"xi": list(xi), "K": k} for xi, k in profile],
        }
        return payload, {"points": len(profile)}
    xi = direction if direction is not None else tuple(0.0 for _ in range(theta.num_vars))
    value = dilatation(theta, xi, settings)
    return {"xi": list(xi), "K": value}, {"K": value}


def cmd_cover_gap(args: argparse.Namespace, settings: Settings, io: Streams) -> Tuple[Payload, Summary]:
    doc = io.load(args.input)
    report = cover_gap(doc.value, args.order, args.jobs, settings)
    return report.to_dict(), {"gamma_cover": report.gamma_cover}


def cmd_validate_theta(args: argparse.Namespace, settings: Settings, io: Streams) -> Tuple[Payload, Summary]:
    doc = io.load(args.input)
    diagnostics = validate_theta(_upoly(doc, "validate-theta")).to_dict()
    for entry in diagnostics["variables"]:
        entry["name"] = doc.variables[entry["variable"] - 1]
    return diagnostics, {"ok": diagnostics["ok"]}


HANDLERS: Dict[str, Callable[[argparse.Namespace, Settings, Streams], Tuple[Payload, Summary]]] = {
    "pf-check": cmd_pf_check,
    "charpoly": cmd_charpoly,
    "specialize": cmd_specialize,
    "spectrum": cmd_spectrum,
    "scan": cmd_scan,
    "gap-cert": cmd_gap_cert,
    "braid": cmd_braid,
    "teich": cmd_teich,
    "divides": cmd_divides,
    "dilatation": cmd_dilatation,
    "cover-gap": cmd_cover_gap,
    "validate-theta": cmd_validate_theta,
}


def build_parser() -> argparse.ArgumentParser:
    io_args = _Parser(add_help=False)
    io_args.add_argument("--input", default="-", help="Input JSON document ('-' for stdin)")
    io_args.add_argument("--output", default="-", help="Output path ('-' for stdout)")
    io_args.add_argument("--pretty", action="store_true", help="Pretty-print JSON output")

    numeric = _Parser(add_help=False)
    numeric.add_argument("--root-tol", type=float, default=None, help="Aberth residual tolerance (default 1e-10)")
    numeric.add_argument("--crosscheck-tol", type=float, default=None, help="Root vs power rho tolerance (default 1e-6)")

    parser = _Parser(prog="lpspec", description="Spectral data of matrices over integral Laurent polynomial rings.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pf = sub.add_parser("pf-check", parents=[io_args], help="Perron-Frobenius primitivity certificate")
    pf.add_argument("--spread-var", type=int, default=None, help="Also report the uniform spread exponent (1-based)")

    sub.add_parser("charpoly", parents=[io_args], help="Exact characteristic polynomial")

    sp = sub.add_parser("specialize", parents=[io_args], help="Evaluate at a character")
    sp.add_argument("--char", required=True, help="Turns, e.g. '1/3,0' or '0.618'")

    spectra = sub.add_parser("spectrum", parents=[io_args, numeric], help="Eigenvalues at a character")
    spectra.add_argument("--char", default=None, help="Turns (default: trivial character)")

    scan = sub.add_parser("scan", parents=[io_args, numeric], help="Spectral radius on a torsion grid")
    scan.add_argument("--grid", type=int, default=64, help="Points per dimension (default 64)")
    scan.add_argument("--exclude", type=float, default=0.0, help="Exclusion radius in turns (default 0)")
    scan.add_argument("--jobs", type=int, default=None, help="Worker threads (default SPECTRAL_SCAN_JOBS)")
    scan.add_argument("--csv", default=None, help="Write per-point CSV here")
    scan.add_argument("--plot", default=None, help="Write <prefix>.dat and <prefix>.gp")

    gap = sub.add_parser("gap-cert", parents=[io_args, numeric], help="Gap constant C for a positive matrix")
    gap.add_argument("--char", required=True, help="Turns, e.g. '0.6180339887'")
    gap.add_argument("--power", type=int, default=None, help="Raise the matrix to this power first")
    gap.add_argument("--spread-var", type=int, default=None, help="Raise to the uniform spread exponent of this variable")
    gap.add_argument("--verify", type=int, default=None, help="Check the certified bounds up to this power")

    br = sub.add_parser("braid", parents=[io_args], help="Reduced Burau or Gassner matrix of a braid word")
    br.add_argument("--word", required=True, help="e.g. 's1 s2^-1'")
    br.add_argument("--strands", type=int, required=True)
    br.add_argument("--gassner", action="store_true", help="Gassner matrix (pure braids only)")
    br.add_argument("--charpoly", action="store_true", help="Emit the characteristic polynomial instead")

    te = sub.add_parser("teich", parents=[io_args], help="Teichmuller polynomial char(P_E) / char(P_V)")
    te.add_argument("--edge", required=True, help="Edge transition matrix JSON")
    te.add_argument("--vertex", required=True, help="Vertex transition matrix JSON")

    dv = sub.add_parser("divides", parents=[io_args], help="Does A divide T up to a unit")
    dv.add_argument("--a", required=True, help="Divisor u-polynomial JSON")
    dv.add_argument("--t", required=True, help="Dividend u-polynomial JSON")
    dv.add_argument("--seed", type=int, default=0, help="Seed of the corroboration schedule (default 0)")
    dv.add_argument("--samples", type=int, default=None, help="Torsion characters to corroborate with (default 25)")
    dv.add_argument("--jobs", type=int, default=None, help="Worker threads for corroboration")

    dl = sub.add_parser("dilatation", parents=[io_args, numeric], help="Largest real root at t = exp(xi)")
    dl.add_argument("--xi", default=None, help="Real direction, comma separated (default 0)")
    dl.add_argument("--ray", default=None, help="Scales along --xi, e.g. '2,4,8'")

    cg = sub.add_parser("cover-gap", parents=[io_args, numeric], help="Top spectral gap on the (Z/q)^h cover")
    cg.add_argument("--order", type=int, required=True, help="Exponent q of the deck group")
    cg.add_argument("--jobs", type=int, default=None)

    sub.add_parser("validate-theta", parents=[io_args], help="Check that theta depends on every variable")
    return parser


def _emit(args: argparse.Namespace, payload: Payload, io: Streams) -> None:
    text = json.dumps(payload, indent=2 if args.pretty else None) + "\n"
    if args.output == "-":
        io.stdout.write(text)
        return
    target = Path(args.output)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")


def run(
    argv: Optional[List[str]] = None,
    stdin: Optional[TextIO] = None,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    io = Streams(stdin or sys.stdin, stdout or sys.stdout, stderr or sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        io.stderr.write(f"error[{EXIT_USAGE}]: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:
        # --help
        return int(exc.code or 0)

    trace = new_run_trace(args.command)
    code = EXIT_OK
    error: Optional[BaseException] = None
    try:
        settings = load_settings().with_overrides(
            root_tol=getattr(args, "root_tol", None),
            crosscheck_tol=getattr(args, "crosscheck_tol", None),
        )
        payload, summary = HANDLERS[args.command](args, settings, io)
        trace["summary"] = summary
        _emit(args, payload, io)
    except UsageError as exc:
        code, error = EXIT_USAGE, exc
    except (ValueError, RuntimeError) as exc:
        code, error = exit_code_for(exc), exc
    if error is not None:
        io.stderr.write(f"error[{code}]: {error}\n")

    try:
        append_run_trace(finish_run_trace(trace, code, error))
    except (OSError, ValueError):
        pass
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

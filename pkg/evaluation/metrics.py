from __future__ import annotations

import argparse
import json
from typing import Any, Dict, List

from metadata.store import load_run_traces
from utils.errors import EXIT_NUMERIC, EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_USAGE


def _safe_ratio(numerator: int, denominator: int) -> float:
    if denominator <= 0:
        return 0.0
    return round(float(numerator) / float(denominator), 4)


def build_metrics(traces: List[Dict[str, Any]]) -> Dict[str, Any]:
    total = len(traces)
    by_command: Dict[str, int] = {}
    exit_counts = {EXIT_OK: 0, EXIT_USAGE: 0, EXIT_PARSE: 0, EXIT_PRECONDITION: 0, EXIT_NUMERIC: 0}
    for t in traces:
        command = str(t.get("command") or "unknown")
        by_command[command] = by_command.get(command, 0) + 1
        try:
            code = int(t.get("exit_code"))
        except (TypeError, ValueError):
            continue
        if code in exit_counts:
            exit_counts[code] += 1

    latencies: Dict[str, List[float]] = {}
    error_types: Dict[str, int] = {}
    for t in traces:
        timing = t.get("timing_ms") or {}
        try:
            elapsed = float(timing.get("total") or 0.0)
        except (TypeError, ValueError):
            continue
        latencies.setdefault(str(t.get("command") or "unknown"), []).append(elapsed)
        if t.get("error_type"):
            error_types[str(t["error_type"])] = error_types.get(str(t["error_type"]), 0) + 1
    every = [ms for values in latencies.values() for ms in values]

    return {
        "totals": {
            "runs": total,
            "by_command": dict(sorted(by_command.items())),
        },
        "rates": {
            "success_rate": _safe_ratio(exit_counts[EXIT_OK], total),
            "usage_error_rate": _safe_ratio(exit_counts[EXIT_USAGE], total),
            "parse_error_rate": _safe_ratio(exit_counts[EXIT_PARSE], total),
            "precondition_failure_rate": _safe_ratio(exit_counts[EXIT_PRECONDITION], total),
            "numeric_failure_rate": _safe_ratio(exit_counts[EXIT_NUMERIC], total),
        },
        "latency_ms": {
            "avg_total": round(sum(every) / len(every), 3) if every else 0.0,
            "max_total": round(max(every), 3) if every else 0.0,
            "avg_by_command": {k: round(sum(v) / len(v), 3) for k, v in sorted(latencies.items())},
        },
        "error_types": dict(sorted(error_types.items(), key=lambda kv: (-kv[1], kv[0]))),
    }


def main() -> None:
    parser = argparse.ArgumentParser(description="Summarize CLI run traces.")
    parser.add_argument("--limit", type=int, default=1000, help="Maximum number of most-recent traces to read")
    parser.add_argument("--pretty", action="store_true", help="Pretty-print JSON output")
    args = parser.parse_args()

    traces = load_run_traces(limit=args.limit)
    metrics = build_metrics(traces)
    if args.pretty:
        print(json.dumps(metrics, indent=2))
    else:
        print(json.dumps(metrics))


if __name__ == "__main__":
    main()

import json
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional
from uuid import uuid4

from utils.settings import load_settings


def _now_iso() -> str:
    return datetime.now(timezone.utc).isoformat()


def _traces_file() -> Path:
    return Path(load_settings().trace_file)


def _ensure_file(path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    if not path.exists():
        path.write_text("", encoding="utf-8")


def new_run_trace(command: str) -> Dict[str, Any]:
    return {
        "trace_id": uuid4().hex,
        "generated_at": _now_iso(),
        "command": command,
        "exit_code": None,
        "error": None,
        "error_type": None,
        "timing_ms": {},
        "summary": {},
        "_started": time.perf_counter(),
    }


def finish_run_trace(trace: Dict[str, Any], exit_code: int, error: Optional[BaseException] = None) -> Dict[str, Any]:
    started = trace.pop("_started", None)
    if started is not None:
        trace["timing_ms"]["total"] = round((time.perf_counter() - started) * 1000.0, 3)
    trace["exit_code"] = exit_code
    if error is not None:
        trace["error"] = str(error)
        trace["error_type"] = type(error).__name__
    return trace


def append_run_trace(trace: Dict[str, Any]) -> None:
    settings = load_settings()
    if not settings.trace_enabled:
        return
    path = Path(settings.trace_file)
    _ensure_file(path)
    with path.open("a", encoding="utf-8") as f:
        f.write(json.dumps(trace, default=str) + "\n")


def load_run_traces(limit: Optional[int] = None) -> List[Dict[str, Any]]:
    path = _traces_file()
    if not path.exists():
        return []
    lines = path.read_text(encoding="utf-8").splitlines()
    if limit is not None and limit > 0:
        lines = lines[-limit:]
    out: List[Dict[str, Any]] = []
    for line in lines:
        line = line.strip()
        if not line:
            continue
        try:
            out.append(json.loads(line))
        except json.JSONDecodeError:
            continue
    return out

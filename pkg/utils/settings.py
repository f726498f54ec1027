from __future__ import annotations

import os
from dataclasses import dataclass, replace
from typing import Any

from utils.env_loader import load_environments


@dataclass(frozen=True)
class Settings:
    root_tol: float = 1e-10
    root_max_iter: int = 500
    crosscheck_tol: float = 1e-6
    power_squarings: int = 48
    scan_jobs: int = 1
    corroboration_samples: int = 25
    corroboration_tol: float = 1e-8
    trace_enabled: bool = True
    trace_file: str = "metadata/run_traces.jsonl"

    def with_overrides(self, **overrides: Any) -> "Settings":
        clean = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **clean)


def _env_float(key: str, default: float) -> float:
    raw = os.getenv(key)
    if raw is None or not raw.strip():
        return default
    try:
        value = float(raw)
    except ValueError as exc:
        raise ValueError(f"{key} must be a number") from exc
    if value <= 0:
        raise ValueError(f"{key} must be positive")
    return value


def _env_int(key: str, default: int) -> int:
    raw = os.getenv(key)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{key} must be an integer") from exc
    if value <= 0:
        raise ValueError(f"{key} must be positive")
    return value


def load_settings() -> Settings:
    load_environments()
    defaults = Settings()
    return Settings(
        root_tol=_env_float("SPECTRAL_ROOT_TOL", defaults.root_tol),
        root_max_iter=_env_int("SPECTRAL_ROOT_MAX_ITER", defaults.root_max_iter),
        crosscheck_tol=_env_float("SPECTRAL_CROSSCHECK_TOL", defaults.crosscheck_tol),
        power_squarings=_env_int("SPECTRAL_POWER_SQUARINGS", defaults.power_squarings),
        scan_jobs=_env_int("SPECTRAL_SCAN_JOBS", defaults.scan_jobs),
        corroboration_samples=_env_int("SPECTRAL_CORROBORATION_SAMPLES", defaults.corroboration_samples),
        corroboration_tol=_env_float("SPECTRAL_CORROBORATION_TOL", defaults.corroboration_tol),
        trace_enabled=os.getenv("SPECTRAL_TRACE_ENABLED", "1").strip().lower() not in {"0", "false", "no", "off"},
        trace_file=os.getenv("SPECTRAL_TRACE_FILE", defaults.trace_file),
    )

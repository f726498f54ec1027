import os
from pathlib import Path
from typing import Dict, Union


def load_environments(env_path: Union[str, Path] = ".env") -> Dict[str, str]:
    """Load KEY=VALUE lines from ``env_path``; variables already set win.

    Returns the keys that were newly applied.
    """
    env_file = Path(env_path)
    applied: Dict[str, str] = {}
    if not env_file.exists():
        return applied

    for raw_line in env_file.read_text(encoding="utf-8").splitlines():
        line = raw_line.strip()
        if not line or line.startswith("#") or "=" not in line:
            continue
        if line.startswith("export "):
            line = line[len("export "):]
        key, value = line.split("=", 1)
        key = key.strip()
        value = value.strip().strip("'").strip('"')
        if key and key not in os.environ:
            os.environ[key] = value
            applied[key] = value
    return applied

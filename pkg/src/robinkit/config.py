"""Run settings: defaults, optional key=value file, ROBINKIT_* environment overrides."""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass
from pathlib import Path

ENV_PREFIX = "ROBINKIT_"


@dataclass
class Settings:
    tolerance: float = 1e-30
    precision_bits: int = 128
    max_precision_escalations: int = 4
    # post-hoc envelope for |e^gamma ln x prod(1 - 1/p) - 1| at x = 1e7
    mertens_envelope: float = 5e-3
    theta_threshold: int = 10544111
    theta_range_hi: int = 12_000_000
    dusart_k_max: int = 100_000
    scan_block: int = 1 << 16
    threads: int = 1

    def updated(self, **values) -> "Settings":
        values = {k: v for k, v in values.items() if v is not None}
        return dataclasses.replace(self, **values)


def _coerce(name: str, raw: str):
    kind = {f.name: f.type for f in dataclasses.fields(Settings)}.get(name)
    if kind is None:
        raise KeyError(f"unknown setting {name!r}")
    return float(raw) if kind == "float" else int(float(raw))


def parse_config(text: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key = value")
        key, raw = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        out[key] = _coerce(key, raw.strip("\"'"))
    return out


def load_settings(path: str | Path | None = None, env=None, **overrides) -> Settings:
    """Defaults < config file < environment < explicit overrides."""
    env = os.environ if env is None else env
    values = {}
    if path is not None:
        values.update(parse_config(Path(path).read_text()))
    for f in dataclasses.fields(Settings):
        raw = env.get(ENV_PREFIX + f.name.upper())
        if raw is not None:
            values[f.name] = _coerce(f.name, raw)
    values.update({k: v for k, v in overrides.items() if v is not None})
    return Settings(**values)

"""Run reports and their JSON / CSV serializations.

Both encodings are deterministic for a fixed config and seed: keys are
sorted, floats are written with a fixed format, and wall-clock time is
only included when explicitly requested.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

__all__ = ["RunReport", "emit_report", "format_float", "entry_rows"]

REPORT_VERSION = 1


def format_float(x: float) -> str:
    x = float(x) + 0.0  # folds -0.0
    return f"{x:.15g}"


def _key(index) -> str:
    if isinstance(index, tuple):
        return ":".join(str(int(i)) for i in index)
    return str(int(index))


def entry_rows(entries: dict) -> list[dict]:
    def sort_key(item):
        k = item[0]
        return k if isinstance(k, tuple) else (k,)

    rows = []
    for k, c in sorted(entries.items(), key=sort_key):
        c = complex(c)
        rows.append(
            {
                "index": _key(k),
                "re": c.real,
                "im": c.imag,
                "energy": c.real**2 + c.imag**2,
            }
        )
    return rows


@dataclass
class RunReport:
    command: str
    config: dict
    entries: list[dict] = field(default_factory=list)
    n: int | None = None
    residual_energy: float | None = None
    total_energy: float | None = None
    ledger: dict = field(default_factory=dict)
    trace: list[dict] = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    wall_clock: float | None = None

    @property
    def n_found(self) -> int:
        return len(self.entries)

    def to_dict(self) -> dict:
        d: dict[str, Any] = {
            "version": REPORT_VERSION,
            "command": self.command,
            "config": self.config,
            "n": self.n,
            "nS": self.n_found,
            "entries": self.entries,
            "residual_energy": self.residual_energy,
            "total_energy": self.total_energy,
            "ledger": self.ledger,
            "trace": self.trace,
        }
        d.update(self.extra)
        if self.wall_clock is not None:
            d["wall_clock_seconds"] = self.wall_clock
        return d


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj) + 0.0
    if isinstance(obj, complex):
        return [obj.real + 0.0, obj.imag + 0.0]
    return obj


def _preamble_value(v) -> str:
    if isinstance(v, float):
        return format_float(v)
    if isinstance(v, (dict, list)):
        return json.dumps(_jsonable(v), sort_keys=True, separators=(",", ":"))
    return str(v)


def emit_report(report: RunReport, fmt: str = "json") -> bytes:
    if fmt == "json":
        text = json.dumps(_jsonable(report.to_dict()), sort_keys=True, indent=2)
        return (text + "\n").encode("utf-8")
    if fmt != "csv":
        raise ValueError(f"unknown report format {fmt!r}")
    buf = io.StringIO()
    buf.write(f"# command={report.command}\n")
    for k, v in sorted(report.config.items()):
        buf.write(f"# config.{k}={_preamble_value(v)}\n")
    for k, v in sorted(report.ledger.items()):
        buf.write(f"# ledger.{k}={_preamble_value(v)}\n")
    for k in ("n", "residual_energy", "total_energy"):
        v = getattr(report, k)
        if v is not None:
            buf.write(f"# {k}={_preamble_value(v)}\n")
    buf.write(f"# nS={report.n_found}\n")
    for k, v in sorted(report.extra.items()):
        buf.write(f"# {k}={_preamble_value(v)}\n")
    if report.wall_clock is not None:
        buf.write(f"# wall_clock_seconds={format_float(report.wall_clock)}\n")
    buf.write("index,re,im,energy\n")
    for row in report.entries:
        buf.write(
            ",".join([row["index"], format_float(row["re"]), format_float(row["im"]), format_float(row["energy"])])
            + "\n"
        )
    return buf.getvalue().encode("utf-8")

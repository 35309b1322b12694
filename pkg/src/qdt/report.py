"""Run reports and their emitters.

A report is a plain tree of sections holding probabilities, decomposition
triples, symmetry flags, residuals of every checked identity, and run
metadata.  Three renderings are provided:

* ``json``: machine-readable, full float precision.
* ``csv``: flattened ``path,value`` rows, same float text as the JSON.
* ``table``: aligned human-readable text, 12 significant digits.

Rendering is deterministic: the same scenario text and seed produce byte
identical output.  Wall-clock timings are therefore kept on the in-memory
object only and never serialized.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from typing import Any

import numpy as np

__all__ = ["ProbabilityReport", "write_atomic", "FORMATS"]

FORMATS = ("json", "csv", "table")


def _sanitize(value):
    """Make a value JSON-safe; non-finite floats become null."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, dict):
        return {str(k): _sanitize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_sanitize(v) for v in value]
    return value


def _flatten(value, prefix: str, rows: list[tuple[str, Any]]) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(v, f"{prefix}.{k}" if prefix else str(k), rows)
    elif isinstance(value, list):
        for i, v in enumerate(value):
            _flatten(v, f"{prefix}[{i}]", rows)
    else:
        rows.append((prefix, value))


def _scalar_text(value, sigdigits: int | None = None) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, f".{sigdigits}g") if sigdigits else repr(value)
    return str(value)


@dataclass
class ProbabilityReport:
    """Outcome of one engine run, ready for rendering.

    ``sections`` maps section names to nested plain data (dicts, lists,
    scalars) in a deterministic order; ``residuals`` collects the absolute
    residual of every identity the run checked; ``metadata`` records the
    seed, tolerances and run parameters.  ``timings`` is informational only
    and excluded from every rendering.
    """

    kind: str
    sections: dict[str, Any] = field(default_factory=dict)
    residuals: dict[str, float] = field(default_factory=dict)
    metadata: dict[str, Any] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"kind": self.kind}
        for name, section in self.sections.items():
            doc[name] = section
        if self.residuals:
            doc["residuals"] = dict(self.residuals)
        doc["metadata"] = dict(self.metadata)
        return _sanitize(doc)

    # -- renderings --------------------------------------------------------

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, allow_nan=False) + "\n"

    def to_csv(self) -> str:
        rows: list[tuple[str, Any]] = []
        _flatten(self.as_dict(), "", rows)
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["field", "value"])
        for path, value in rows:
            writer.writerow([path, _scalar_text(value)])
        return buffer.getvalue()

    def to_table(self, sigdigits: int = 12) -> str:
        rows: list[tuple[str, Any]] = []
        _flatten(self.as_dict(), "", rows)
        width = max(len(path) for path, _ in rows)
        lines = [f"{path.ljust(width)}  {_scalar_text(value, sigdigits)}" for path, value in rows]
        return "\n".join(lines) + "\n"

    def render(self, fmt: str = "table") -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "table":
            return self.to_table()
        raise ValueError(f"unknown format {fmt!r} (one of: {', '.join(FORMATS)})")

    def write(self, path, fmt: str = "json") -> None:
        write_atomic(path, self.render(fmt))


def write_atomic(path, text: str) -> None:
    """Write text to ``path`` atomically (temp file in place, then rename)."""
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    handle = tempfile.NamedTemporaryFile(
        "w", encoding="utf-8", dir=directory, prefix=".tmp-", delete=False
    )
    try:
        with handle:
            handle.write(text)
        os.replace(handle.name, path)
    except BaseException:
        os.unlink(handle.name)
        raise

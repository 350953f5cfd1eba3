"""Verification reports and their JSON / CSV serialization."""
from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from typing import Any

SCHEMA_VERSION = "1.0"
PASS, FAIL, INDETERMINATE = "Pass", "Fail", "Indeterminate"


def encode(value: Any) -> Any:
    """JSON-safe form: complex numbers become {re, im}, numpy scalars become floats."""
    if isinstance(value, dict):
        return {k: encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if hasattr(value, "item") and not isinstance(value, (list, dict)):
        value = value.item()
    if isinstance(value, complex):
        return {"re": _num(value.real), "im": _num(value.imag)}
    if isinstance(value, float):
        return _num(value)
    return value


def _num(x: float):
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


@dataclass
class Row:
    point: dict
    lhs: complex
    rhs: complex
    status: str = "ok"
    note: str = ""

    @property
    def abs_err(self) -> float:
        if self.status != "ok":
            return math.nan
        return abs(self.lhs - self.rhs)

    @property
    def rel_err(self) -> float:
        if self.status != "ok":
            return math.nan
        scale = max(abs(self.lhs), abs(self.rhs))
        return self.abs_err / scale if scale > 0 else 0.0

    def as_dict(self) -> dict:
        return {
            "point": self.point,
            "lhs": complex(self.lhs),
            "rhs": complex(self.rhs),
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "status": self.status,
            "note": self.note,
        }


@dataclass
class VerificationReport:
    identity: str
    anchor: str
    params: dict
    seed: int | None
    rows: list = field(default_factory=list)
    tol: float = 0.0
    tool_version: str = ""

    @property
    def max_rel_err(self) -> float:
        errs = [r.rel_err for r in self.rows if r.status == "ok"]
        return max(errs) if errs else math.nan

    @property
    def verdict(self) -> str:
        if any(r.status == "ok" and not r.rel_err <= self.tol for r in self.rows):
            return FAIL
        if not self.rows or any(r.status != "ok" for r in self.rows):
            return INDETERMINATE
        return PASS

    def as_dict(self) -> dict:
        from . import __version__

        return {
            "schema_version": SCHEMA_VERSION,
            "identity": self.identity,
            "anchor": self.anchor,
            "params": self.params,
            "seed": self.seed,
            "rows": [r.as_dict() for r in self.rows],
            "max_rel_err": self.max_rel_err,
            "tol": self.tol,
            "verdict": self.verdict,
            "tool_version": self.tool_version or __version__,
        }

    def to_json(self) -> str:
        return json.dumps(encode(self.as_dict()), indent=2)

    def to_csv(self) -> str:
        return rows_to_csv(self.identity, self.params, [r.as_dict() for r in self.rows])


def _flatten(prefix: str, value: Any, out: dict):
    if isinstance(value, dict) and set(value) != {"re", "im"}:
        for k, v in value.items():
            _flatten(f"{prefix}{k}." if prefix else f"{k}.", v, out)
        return
    key = prefix[:-1]
    if isinstance(value, dict):
        out[key + "_re"], out[key + "_im"] = value["re"], value["im"]
    elif isinstance(value, list):
        out[key] = json.dumps(value)
    else:
        out[key] = value


def rows_to_csv(tag: str, params: dict, rows: list[dict]) -> str:
    flat = []
    for r in rows:
        d = {"identity": tag}
        _flatten("", encode({"params": params, **r}), d)
        flat.append(d)
    fields: list[str] = []
    for d in flat:
        for k in d:
            if k not in fields:
                fields.append(k)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(flat)
    return buf.getvalue()


def write_atomic(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)

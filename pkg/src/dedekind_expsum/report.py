"""CSV / JSON serialization of check records.

Every record, whatever produced it, is flattened to the same columns. Exact
integers are written as integers, exact rationals as ``num/den`` strings and
floats with 17 significant digits, so a JSON round trip is lossless.
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
import sys
from fractions import Fraction

from .hybrid_means import ResidualRecord
from .moment_engine import MomentReport, Verdict

COLUMNS = (
    "target",
    "p",
    "p_mod_8",
    "brute_or_mean",
    "closed_or_main",
    "ratio",
    "normalized_residual",
    "verdict",
    "runtime_ms",
)

MOMENT_TARGETS = {"lemma21", "eq2", "lemma22", "lemma23", "lemma24", "lemma25", "lemma27"}

_RATIONAL = re.compile(r"^-?\d+/\d+$")
_INTEGER = re.compile(r"^-?\d+$")


def format_value(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        raise TypeError("booleans are not report values")
    if isinstance(x, (int, Fraction)):
        return str(x)
    if isinstance(x, Verdict):
        return x.value
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def _json_value(x):
    if x is None or isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        if math.isnan(x) or math.isinf(x):
            return f"{x:.17g}"
        return float(f"{x:.17g}")
    if isinstance(x, Verdict):
        return x.value
    return x


def record_fields(rec) -> dict:
    """The record's column values, in COLUMNS order, as Python values."""
    if isinstance(rec, MomentReport):
        return {
            "target": rec.lemma_id,
            "p": rec.p,
            "p_mod_8": rec.p % 8,
            "brute_or_mean": rec.brute_value,
            "closed_or_main": rec.closed_value,
            "ratio": rec.ratio,
            "normalized_residual": rec.normalized_residual,
            "verdict": rec.verdict,
            "runtime_ms": rec.runtime_ms,
        }
    if isinstance(rec, ResidualRecord):
        return {
            "target": rec.target,
            "p": rec.p,
            "p_mod_8": rec.residue_class,
            "brute_or_mean": rec.mean_value,
            "closed_or_main": rec.main_term,
            "ratio": rec.ratio,
            "normalized_residual": rec.normalized_residual,
            "verdict": rec.verdict,
            "runtime_ms": rec.runtime_ms,
        }
    raise TypeError(f"not a report record: {type(rec).__name__}")


def to_csv(records, timing: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for rec in records:
        f = record_fields(rec)
        if not timing:
            f["runtime_ms"] = 0
        w.writerow([format_value(f[c]) for c in COLUMNS])
    return buf.getvalue()


def to_json(records, timing: bool = True) -> str:
    rows = []
    for rec in records:
        f = record_fields(rec)
        if not timing:
            f["runtime_ms"] = 0
        rows.append({c: _json_value(f[c]) for c in COLUMNS})
    return json.dumps(rows, indent=1) + "\n"


def emit_report(records, fmt: str = "csv", path: str | None = None, timing: bool = True) -> str:
    """Serialize ``records``; write to ``path`` (stdout when None or '-')."""
    if fmt == "csv":
        text = to_csv(records, timing)
    elif fmt == "json":
        text = to_json(records, timing)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    return text


# ---------------------------------------------------------------- parsing


def parse_value(x):
    """Inverse of the serializers for a single cell."""
    if x is None or isinstance(x, (int, float)):
        return x
    if x == "":
        return None
    if _INTEGER.match(x):
        return int(x)
    if _RATIONAL.match(x):
        return Fraction(x)
    return float(x)


def record_from_row(row: dict):
    target = row["target"]
    p = int(row["p"])
    verdict = row["verdict"]
    verdict = Verdict(verdict) if verdict else None
    ms = int(row["runtime_ms"])
    if target in MOMENT_TARGETS:
        return MomentReport(
            p, target, parse_value(row["brute_or_mean"]), parse_value(row["closed_or_main"]),
            verdict, normalized_residual=_float_or_none(row["normalized_residual"]), runtime_ms=ms,
        )
    return ResidualRecord(
        target, p, float(parse_value(row["brute_or_mean"])), float(parse_value(row["closed_or_main"])),
        float(parse_value(row["ratio"])), float(parse_value(row["normalized_residual"])), verdict, ms,
    )


def _float_or_none(x):
    v = parse_value(x)
    return None if v is None else float(v)


def read_json(text: str) -> list:
    return [record_from_row(r) for r in json.loads(text)]


def read_csv(text: str) -> list:
    return [record_from_row(r) for r in csv.DictReader(io.StringIO(text))]

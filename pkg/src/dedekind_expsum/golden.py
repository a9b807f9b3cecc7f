"""Golden store: recorded oracle outputs and calibrated envelope constants.

Two plain CSV files live in the golden directory:

``values.csv``     target, p, params_hash, value, ratio, normalized_residual
``constants.csv``  target, constant, p_min, p_max, observed_max

Values are keyed by (target, p, params_hash); the hash covers the target's
parameters so a changed parameter set never collides with an old record.
Constants are empirical: the largest |normalized residual| seen over the
calibration range, with 25% headroom, rounded up to three significant digits.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path

from .report import format_value, parse_value, record_fields

ENV_VAR = "DEDEKIND_EXPSUM_GOLDEN_DIR"
PACKAGE_GOLDEN = Path(__file__).with_name("golden")
HEADROOM = 1.25

VALUE_COLUMNS = ("target", "p", "params_hash", "value", "ratio", "normalized_residual")
CONSTANT_COLUMNS = ("target", "constant", "p_min", "p_max", "observed_max")

# parameters that define each target; part of the content-addressed key
TARGET_PARAMS = {
    "lemma21": {"k": 4, "h": 2},
    "eq2": {"k": 4, "h": 2},
    "lemma22": {"k": 5, "h": 1},
    "lemma23": {"exponents": [4, 2]},
    "lemma24": {"exponents": [5, 1]},
    "lemma25": {},
    "lemma26": {},
    "lemma27": {"k": 4, "h": 2},
    "t11": {"k": 4, "h": 2, "c_power": 4, "r": 1},
    "t12": {"k": 5, "h": 1, "c_power": 4, "r": 1},
    "wangpan31": {"k": 3, "h": 1, "c_power": 2, "r": 1},
    "wangpan42": {"k": 4, "h": 2, "c_power": 2, "r": 1},
}

# targets whose value is a float (compared with a relative tolerance)
FLOAT_TARGETS = {"lemma23", "lemma24", "lemma26", "t11", "t12", "wangpan31", "wangpan42"}


def default_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else PACKAGE_GOLDEN


def params_hash(target: str, params: dict | None = None) -> str:
    if params is None:
        params = TARGET_PARAMS.get(target, {})
    blob = json.dumps({"target": target, "params": params}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


def round_up(x: float, digits: int = 3) -> float:
    if x <= 0:
        return 0.0
    scale = 10 ** (digits - 1 - math.floor(math.log10(x)))
    return math.ceil(x * scale) / scale


@dataclass
class GoldenStore:
    root: Path
    values: dict = field(default_factory=dict)
    constants: dict = field(default_factory=dict)

    @classmethod
    def load(cls, root=None) -> GoldenStore:
        root = Path(root) if root is not None else default_dir()
        store = cls(root)
        vpath, cpath = root / "values.csv", root / "constants.csv"
        if vpath.exists():
            with open(vpath, newline="") as fh:
                for row in csv.DictReader(fh):
                    store.values[(row["target"], int(row["p"]), row["params_hash"])] = row
        if cpath.exists():
            with open(cpath, newline="") as fh:
                for row in csv.DictReader(fh):
                    store.constants[row["target"]] = {
                        "constant": float(row["constant"]),
                        "p_min": int(row["p_min"]),
                        "p_max": int(row["p_max"]),
                        "observed_max": float(row["observed_max"]),
                    }
        return store

    def bounds(self) -> dict[str, float]:
        return {t: c["constant"] for t, c in self.constants.items()}

    def key(self, rec) -> tuple[str, int, str]:
        f = record_fields(rec)
        return f["target"], f["p"], params_hash(f["target"])

    def record(self, records):
        for rec in records:
            f = record_fields(rec)
            k = self.key(rec)
            self.values[k] = {
                "target": k[0],
                "p": str(k[1]),
                "params_hash": k[2],
                "value": format_value(f["brute_or_mean"]),
                "ratio": format_value(f["ratio"]),
                "normalized_residual": format_value(f["normalized_residual"]),
            }

    def calibrate(self, records):
        """Set each target's envelope constant from the records' normalized residuals."""
        by_target: dict[str, list] = {}
        for rec in records:
            f = record_fields(rec)
            nr = f["normalized_residual"]
            if nr is None or (isinstance(nr, float) and math.isnan(nr)):
                continue
            by_target.setdefault(f["target"], []).append((f["p"], abs(nr)))
        for target, rows in by_target.items():
            observed = max(v for _, v in rows)
            self.constants[target] = {
                "constant": round_up(observed * HEADROOM),
                "p_min": min(p for p, _ in rows),
                "p_max": max(p for p, _ in rows),
                "observed_max": observed,
            }

    def compare(self, rec, rel_tol: float = 1e-8) -> bool | None:
        """True/False against the stored value, None when nothing is stored."""
        stored = self.values.get(self.key(rec))
        if stored is None:
            return None
        f = record_fields(rec)
        new, old = f["brute_or_mean"], parse_value(stored["value"])
        if f["target"] in FLOAT_TARGETS:
            new, old = float(new), float(old)
            if f["target"] in ("lemma23", "lemma24"):
                # vanishing sums: both sides are rounding noise below the tolerance
                return abs(new - old) < 1e-6
            return math.isclose(new, old, rel_tol=rel_tol, abs_tol=0.0)
        return format_value(new) == format_value(old)

    def save(self):
        self.root.mkdir(parents=True, exist_ok=True)
        with open(self.root / "values.csv", "w", newline="") as fh:
            w = csv.DictWriter(fh, VALUE_COLUMNS, lineterminator="\n")
            w.writeheader()
            for k in sorted(self.values):
                w.writerow(self.values[k])
        with open(self.root / "constants.csv", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CONSTANT_COLUMNS)
            for t in sorted(self.constants):
                c = self.constants[t]
                w.writerow([t, repr(c["constant"]), c["p_min"], c["p_max"], repr(c["observed_max"])])

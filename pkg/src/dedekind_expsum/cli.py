"""Command-line front end.

    dedekind-expsum dedekind H Q [--method direct|reciprocity]
    dedekind-expsum expsum M N K H Q
    dedekind-expsum verify TARGET [--pmin P] [--pmax P] ...
    dedekind-expsum scan {t11,t12,wangpan,hybrid} ...
    dedekind-expsum golden {record,check} [--targets a,b,...] ...

Exit status: 0 when every verdict is MATCH or BOUND_OK, 1 when any is
MISMATCH or BOUND_FAIL (the report is still written), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass

from .core_arith import is_prime
from .golden import GoldenStore
from .hybrid_means import prime_scan
from .moment_engine import MomentReport, Verdict
from .report import emit_report, record_fields
from .special_sums import ExpSumParams, dedekind_sum, two_term_exponential_sum

log = logging.getLogger("dedekind_expsum")

VERIFY_TARGETS = ("lemma21", "lemma22", "lemma23", "lemma24", "lemma25", "lemma26", "lemma27", "eq2")
SCAN_TARGETS = ("t11", "t12", "wangpan", "hybrid")
GOLDEN_TARGETS = VERIFY_TARGETS + ("t11", "t12", "wangpan")

DEFAULT_RANGES = {
    "lemma21": (5, 151),
    "eq2": (5, 61),
    "lemma22": (5, 61),
    "lemma23": (7, 23),
    "lemma24": (7, 23),
    "lemma25": (5, 101),
    "lemma26": (101, 997),
    "lemma27": (5, 61),
    "t11": (5, 499),
    "t12": (5, 499),
    "wangpan": (5, 499),
    "hybrid": (5, 101),
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    target: str | None = None
    p_min: int | None = None
    p_max: int | None = None
    k: int = 4
    h: int = 2
    c_power: int = 4
    r: int = 1
    format: str = "csv"
    out_path: str | None = None
    workers: int = 1
    tolerance: float = 1e-6
    golden_dir: str | None = None
    timing: bool = True


def snap_range(p_min: int, p_max: int) -> tuple[int, int]:
    """Move non-prime bounds inward to the nearest primes, warning on stderr."""
    lo, hi = p_min, p_max
    while lo <= hi and not is_prime(lo):
        lo += 1
    while hi >= lo and not is_prime(hi):
        hi -= 1
    if lo != p_min or hi != p_max:
        if lo > hi:
            log.warning("no prime in [%d, %d]; the report will be empty", p_min, p_max)
        else:
            log.warning("range [%d, %d] snapped to primes [%d, %d]", p_min, p_max, lo, hi)
    return lo, hi


def _resolve_range(cfg: RunConfig, target: str) -> tuple[int, int]:
    lo, hi = DEFAULT_RANGES[target]
    lo = cfg.p_min if cfg.p_min is not None else lo
    hi = cfg.p_max if cfg.p_max is not None else hi
    if lo > hi:
        return lo, hi
    if lo < 5:
        raise UsageError(f"--pmin must be at least 5, got {lo}")
    return snap_range(lo, hi)


def _run_target(cfg: RunConfig, target: str, bounds: dict) -> list:
    lo, hi = _resolve_range(cfg, target)
    opts = {"tolerance": cfg.tolerance}
    if target == "hybrid":
        opts["params"] = {"k": cfg.k, "h": cfg.h, "c_power": cfg.c_power, "r": cfg.r}
    return prime_scan(lo, hi, target, workers=cfg.workers, bounds=bounds, **opts)


def _exit_code(records) -> int:
    bad = {Verdict.MISMATCH, Verdict.BOUND_FAIL}
    return 1 if any(record_fields(r)["verdict"] in bad for r in records) else 0


def _summarize(records):
    counts: dict[str, int] = {}
    for rec in records:
        v = record_fields(rec)["verdict"]
        key = v.value if v is not None else "-"
        counts[key] = counts.get(key, 0) + 1
        if isinstance(rec, MomentReport) and (
            rec.verdict is Verdict.MISMATCH or (rec.lemma_id == "lemma22" and rec.witness)
        ):
            print(f"{rec.lemma_id} p={rec.p} {rec.verdict.value} {rec.witness}", file=sys.stderr)
    summary = " ".join(f"{k}={v}" for k, v in sorted(counts.items()))
    print(f"{len(records)} records: {summary}", file=sys.stderr)


def cmd_dedekind(args) -> int:
    try:
        s = dedekind_sum(args.h, args.q, args.method)
    except ValueError as e:
        raise UsageError(str(e))
    if args.format == "json":
        print(json.dumps({"num": s.numerator, "den": s.denominator}))
    else:
        print("num,den")
        print(f"{s.numerator},{s.denominator}")
    return 0


def cmd_expsum(args) -> int:
    try:
        z = two_term_exponential_sum(ExpSumParams(args.m, args.n, args.k, args.h, args.q))
    except ValueError as e:
        raise UsageError(str(e))
    row = {"re": f"{z.real:.17g}", "im": f"{z.imag:.17g}", "abs": f"{abs(z):.17g}"}
    if args.format == "json":
        print(json.dumps({k: float(v) for k, v in row.items()}))
    else:
        print("re,im,abs")
        print(",".join(row.values()))
    return 0


def cmd_check(cfg: RunConfig) -> int:
    store = GoldenStore.load(cfg.golden_dir)
    records = _run_target(cfg, cfg.target, store.bounds())
    emit_report(records, cfg.format, cfg.out_path, cfg.timing)
    _summarize(records)
    return _exit_code(records)


def cmd_golden(cfg: RunConfig, targets: list[str]) -> int:
    store = GoldenStore.load(cfg.golden_dir)
    if cfg.target == "record":
        records = []
        for t in targets:
            records += _run_target(cfg, t, {})
        store.record(records)
        store.calibrate(records)
        store.save()
        emit_report(records, cfg.format, cfg.out_path, cfg.timing)
        print(f"recorded {len(records)} golden values in {store.root}", file=sys.stderr)
        return 0
    records = []
    missing = 0
    for t in targets:
        for rec in _run_target(cfg, t, store.bounds()):
            same = store.compare(rec, cfg.tolerance)
            if same is None:
                missing += 1
            elif not same:
                _force_mismatch(rec)
            records.append(rec)
    emit_report(records, cfg.format, cfg.out_path, cfg.timing)
    if missing:
        print(f"{missing} records have no golden value", file=sys.stderr)
    _summarize(records)
    return _exit_code(records)


def _force_mismatch(rec):
    rec.verdict = Verdict.MISMATCH
    if isinstance(rec, MomentReport):
        rec.witness = (rec.witness + ";" if rec.witness else "") + "golden=MISMATCH"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dedekind-expsum", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dedekind", help="exact Dedekind sum S(h, q)")
    p.add_argument("h", type=int)
    p.add_argument("q", type=int)
    p.add_argument("--method", choices=("direct", "reciprocity"), default="reciprocity")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("expsum", help="two-term exponential sum C(m, n, k, h; q)")
    for name in ("m", "n", "k", "h", "q"):
        p.add_argument(name, type=int)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    def scan_options(sp):
        sp.add_argument("--pmin", type=int)
        sp.add_argument("--pmax", type=int)
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--out", default=None, help="output path (default stdout)")
        sp.add_argument("--tolerance", type=float, default=None,
                        help="vanishing tolerance for verify (1e-6); relative tolerance for golden check (1e-8)")
        sp.add_argument("--golden-dir", default=None)
        sp.add_argument("--no-timing", action="store_true", help="write runtime_ms as 0")

    p = sub.add_parser("verify", help="check one identity over a prime range")
    p.add_argument("target", choices=VERIFY_TARGETS)
    scan_options(p)

    p = sub.add_parser("scan", help="residual scan of a hybrid mean over primes")
    p.add_argument("target", choices=SCAN_TARGETS)
    scan_options(p)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--h", type=int, default=2)
    p.add_argument("--c-power", type=int, choices=(2, 4), default=4)
    p.add_argument("--r", type=int, default=1)

    p = sub.add_parser("golden", help="record or check golden values")
    p.add_argument("action", choices=("record", "check"))
    p.add_argument("--targets", default=",".join(GOLDEN_TARGETS))
    scan_options(p)
    return parser


def run_command(argv=None) -> int:
    logging.basicConfig(format="warning: %(message)s", level=logging.WARNING, stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if args.command == "dedekind":
            return cmd_dedekind(args)
        if args.command == "expsum":
            return cmd_expsum(args)
        default_tol = 1e-8 if args.command == "golden" else 1e-6
        cfg = RunConfig(
            command=args.command,
            target=getattr(args, "target", None) or getattr(args, "action", None),
            p_min=args.pmin,
            p_max=args.pmax,
            k=getattr(args, "k", 4),
            h=getattr(args, "h", 2),
            c_power=getattr(args, "c_power", 4),
            r=getattr(args, "r", 1),
            format=args.format,
            out_path=args.out,
            workers=args.workers,
            tolerance=args.tolerance if args.tolerance is not None else default_tol,
            golden_dir=args.golden_dir,
            timing=not args.no_timing,
        )
        if cfg.workers < 1:
            raise UsageError("--workers must be positive")
        if args.command == "golden":
            targets = [t.strip() for t in args.targets.split(",") if t.strip()]
            unknown = set(targets) - set(GOLDEN_TARGETS)
            if unknown:
                raise UsageError(f"unknown golden targets: {', '.join(sorted(unknown))}")
            return cmd_golden(cfg, targets)
        return cmd_check(cfg)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()

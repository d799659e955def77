"""CLI entry point and reproducible experiment sweeps.

Every subcommand is deterministic given its flags: randomness is derived
from (seed, trial) through SHA-256 substreams, iteration orders are fixed,
and serialized output carries no timestamps or timings, so re-running a
command with the same configuration produces byte-identical files.

Exit codes: 0 all checks pass, 1 an identity/equality check failed,
2 invalid parameters.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .characters import character_table, run_identity_checks
from .cyclotomic import Cyclotomic
from .distance import (bounds, distance_set, nu_direct_all, nu_spectral,
                       sharpness_example)
from .fourier import PointSet, spectral_energy
from .geometry import SphereSpec, sphere_ft
from .gf import (DEFAULT_CAP, Field, Point, enumerate_vectors,
                 factor_prime_power, make_field, point_from_index)

CSV_COLUMNS = ("q", "p", "s", "d", "k", "t", "size", "trial", "metric", "value")


# ---------------------------------------------------------------------------
# sampling and sweeps
# ---------------------------------------------------------------------------

def substream_id(seed: int, trial: int, label: str = "sample") -> int:
    digest = hashlib.sha256(f"{label}:{seed}:{trial}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def sample_set(field: Field, d: int, size: int, seed: int, trial: int,
               cap: int = DEFAULT_CAP) -> PointSet:
    """Uniform without-replacement sample of F_q^d, deterministic in (seed, trial)."""
    n = field.q**d
    if size > n:
        raise ValueError(f"sample size {size} exceeds |F_q^d| = {n}")
    if n > cap:
        raise ValueError(f"q^d = {n} exceeds enumeration cap {cap}")
    rng = random.Random(substream_id(seed, trial))
    indices = sorted(rng.sample(range(n), size))
    return PointSet(field, d, [point_from_index(field, d, i) for i in indices])


@dataclass(frozen=True)
class ExperimentConfig:
    p: int
    s: int
    d: int
    k: int
    C: Fraction = Fraction(4)
    seed: int = 0
    trials: int = 1
    size_grid: Optional[tuple[int, ...]] = None  # None = auto geometric grid
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 1 <= self.k <= self.d:
            raise ValueError(f"k must lie in [1, {self.d}]")

    @property
    def threshold_exponent(self) -> float:
        return max((self.d + 1) / 2, self.d - self.k)

    def threshold_size(self, q: int) -> int:
        return math.ceil(float(self.C) * q**self.threshold_exponent)

    def resolve_sizes(self, q: int) -> tuple[int, ...]:
        n = q**self.d
        if self.size_grid is not None:
            sizes = self.size_grid
            if any(not 1 <= s <= n for s in sizes):
                raise ValueError(f"sizes must lie in [1, {n}]")
            return tuple(sorted(set(sizes)))
        base = self.threshold_size(q)
        grid = {max(1, min(n, math.ceil(base * f))) for f in (0.25, 0.5, 1.0, 2.0)}
        grid.add(min(n, base))
        return tuple(sorted(grid))


@dataclass(frozen=True)
class SweepRecord:
    q: int
    d: int
    k: int
    size: int
    trial: int
    substream: int
    full_coverage: bool
    missing_radii: tuple[int, ...]
    runtime_ms: float  # informational; excluded from serialized output

    def as_json(self) -> dict:
        return {
            "q": self.q, "d": self.d, "k": self.k, "size": self.size,
            "trial": self.trial, "substream": self.substream,
            "full_coverage": self.full_coverage,
            "missing_radii": list(self.missing_radii),
        }


def threshold_sweep(field: Field, config: ExperimentConfig,
                    force_sharpness: bool = False) -> tuple[list[SweepRecord], list[dict]]:
    """Sample E at each grid size and record whether D_k(E) = F_q.

    With force_sharpness the sampled set is replaced by the axis-aligned
    example of size q^{d-k}, whose k-distance set is {0}.
    """
    from .distance import _distance_indices

    q = field.q
    records: list[SweepRecord] = []
    sizes = ((field.q ** (config.d - config.k),) if force_sharpness
             else config.resolve_sizes(q))
    for size in sizes:
        for trial in range(config.trials):
            start = time.perf_counter()
            sub = substream_id(config.seed, trial)
            if force_sharpness:
                E = sharpness_example(field, config.d, config.k, config.cap)
            else:
                E = sample_set(field, config.d, size, config.seed, trial, config.cap)
            found = _distance_indices(E, config.k)
            missing = tuple(sorted(set(range(q)) - found))
            xcheck = random.Random(substream_id(config.seed, trial, f"xcheck:{size}"))
            if xcheck.random() < 0.05:
                _cross_check_coverage(field, E, config.k, found, config.cap)
            records.append(SweepRecord(
                q=q, d=config.d, k=config.k, size=len(E), trial=trial,
                substream=sub, full_coverage=not missing, missing_radii=missing,
                runtime_ms=(time.perf_counter() - start) * 1e3,
            ))
    summaries = []
    for size in sorted({r.size for r in records}):
        hits = [r for r in records if r.size == size]
        covered = sum(1 for r in hits if r.full_coverage)
        summaries.append({
            "size": size, "trials": len(hits), "covered_trials": covered,
            "coverage_fraction": covered / len(hits),
        })
    return records, summaries


def _cross_check_coverage(field: Field, E: PointSet, k: int, found: set[int],
                          cap: int) -> None:
    # the spectral pair count must agree with direct coverage membership
    table = character_table(field)
    energy = spectral_energy(E, cap)
    for t in field.elements:
        count = nu_spectral(E, t, k, table, energy, cap)
        if (count > 0) != (t.index in found):
            raise AssertionError(
                f"spectral/direct coverage mismatch at t={t.index}: nu={count}")


# ---------------------------------------------------------------------------
# serialization helpers
# ---------------------------------------------------------------------------

def cyclo_strings(v: Cyclotomic) -> list[str]:
    return [str(c) for c in v.coeffs]


def _field_meta(field: Field, d: Optional[int] = None, k: Optional[int] = None) -> dict:
    meta = {"q": field.q, "p": field.p, "s": field.s,
            "modulus": list(field.modulus)}
    if d is not None:
        meta["d"] = d
    if k is not None:
        meta["k"] = k
    return meta


def _row(field: Field, metric: str, value, *, d="", k="", t="", size="", trial="") -> dict:
    return {"q": field.q, "p": field.p, "s": field.s, "d": d, "k": k, "t": t,
            "size": size, "trial": trial, "metric": metric, "value": value}


def render_output(payload: dict, rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _resolve_field(args) -> Field:
    if args.q is not None:
        p, s = factor_prime_power(args.q)
    elif args.p is not None:
        p, s = args.p, args.s or 1
    else:
        raise ValueError("specify the field via --q or --p/--s")
    return make_field(p, s)


def _sample_or_sharpness(field: Field, args) -> PointSet:
    if getattr(args, "use_sharpness", False):
        return sharpness_example(field, args.d, args.k, args.cap)
    if args.size is None:
        raise ValueError("--size is required unless --use-sharpness is given")
    return sample_set(field, args.d, args.size, args.seed, args.trial, args.cap)


def cmd_verify_identities(args) -> tuple[dict, list[dict], int]:
    field = _resolve_field(args)
    checks = run_identity_checks(field)
    payload = {
        "command": "verify-identities",
        "field": _field_meta(field),
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                   for c in checks],
        "all_passed": all(c.passed for c in checks),
    }
    rows = [_row(field, c.name, int(c.passed)) for c in checks]
    return payload, rows, 0 if payload["all_passed"] else 1


def cmd_sphere_ft(args) -> tuple[dict, list[dict], int]:
    field = _resolve_field(args)
    table = character_table(field)
    t = field.element(args.t)
    spec = SphereSpec(args.k, t)
    if args.mode == "closed" and t.is_zero:
        raise ValueError("closed mode requires t != 0")
    if args.m is not None:
        ms = [Point(field, [int(c) for c in args.m.split(",")])]
        if ms[0].d != args.d:
            raise ValueError(f"--m must have {args.d} coordinates")
    else:
        ms = enumerate_vectors(field, args.d, args.cap)
    records = []
    rows = []
    mismatches = 0
    for m in ms:
        rec: dict = {"m": list(m.idx)}
        if args.mode in ("closed", "both"):
            rec["closed"] = cyclo_strings(sphere_ft(table, m, spec, "closed", args.cap))
        if args.mode in ("brute", "both"):
            rec["brute"] = cyclo_strings(sphere_ft(table, m, spec, "brute", args.cap))
        if args.mode == "both":
            rec["equal"] = rec["closed"] == rec["brute"]
            mismatches += 0 if rec["equal"] else 1
            rows.append(_row(field, f"sphere_ft_equal[{','.join(map(str, m.idx))}]",
                             int(rec["equal"]), d=args.d, k=args.k, t=args.t))
        else:
            value = rec.get("closed") or rec.get("brute")
            rows.append(_row(field, f"sphere_ft_{args.mode}[{','.join(map(str, m.idx))}]",
                             "|".join(value), d=args.d, k=args.k, t=args.t))
        records.append(rec)
    payload = {
        "command": "sphere-ft",
        "field": _field_meta(field, args.d, args.k),
        "t": args.t, "mode": args.mode,
        "records": records,
    }
    if args.mode == "both":
        payload["all_equal"] = mismatches == 0
    return payload, rows, 0 if mismatches == 0 else 1


def cmd_distance_set(args) -> tuple[dict, list[dict], int]:
    field = _resolve_field(args)
    E = _sample_or_sharpness(field, args)
    dset = [e.index for e in distance_set(E, args.k)]
    payload = {
        "command": "distance-set",
        "field": _field_meta(field, args.d, args.k),
        "size": len(E), "seed": args.seed, "trial": args.trial,
        "distances": dset,
        "full": len(dset) == field.q,
    }
    rows = [_row(field, "distance_count", len(dset), d=args.d, k=args.k,
                 size=len(E), trial=args.trial),
            _row(field, "distances", "|".join(map(str, dset)), d=args.d,
                 k=args.k, size=len(E), trial=args.trial)]
    return payload, rows, 0


def cmd_nu(args) -> tuple[dict, list[dict], int]:
    field = _resolve_field(args)
    E = _sample_or_sharpness(field, args)
    table = character_table(field)
    energy = spectral_energy(E, args.cap)
    direct_all = nu_direct_all(E, args.k)
    ts = [field.element(args.t)] if args.t is not None else list(field.elements)
    records = []
    rows = []
    failures = 0
    for t in ts:
        direct = direct_all[t.index]
        spectral = nu_spectral(E, t, args.k, table, energy, args.cap)
        equal = spectral == direct
        failures += 0 if equal else 1
        records.append({"q": field.q, "p": field.p, "s": field.s, "d": args.d,
                        "k": args.k, "t": t.index, "size": len(E),
                        "direct": direct, "spectral": str(spectral), "equal": equal})
        rows.append(_row(field, "nu_direct", direct, d=args.d, k=args.k,
                         t=t.index, size=len(E), trial=args.trial))
        rows.append(_row(field, "nu_spectral", str(spectral), d=args.d, k=args.k,
                         t=t.index, size=len(E), trial=args.trial))
        rows.append(_row(field, "nu_equal", int(equal), d=args.d, k=args.k,
                         t=t.index, size=len(E), trial=args.trial))
    payload = {"command": "nu", "field": _field_meta(field, args.d, args.k),
               "seed": args.seed, "trial": args.trial, "records": records,
               "all_equal": failures == 0}
    return payload, rows, 0 if failures == 0 else 1


def cmd_bounds(args) -> tuple[dict, list[dict], int]:
    field = _resolve_field(args)
    if args.t == 0:
        raise ValueError("bounds require t != 0")
    E = _sample_or_sharpness(field, args)
    t = field.element(args.t)
    report = bounds(E, t, args.k, cap=args.cap)
    ok = report.b_m2 == 0 and report.a_sum_abs <= report.a_bound * (1 + 1e-6)
    payload = {
        "command": "bounds",
        "field": _field_meta(field, args.d, args.k),
        "t": args.t, "size": len(E), "seed": args.seed, "trial": args.trial,
        "components": report.components(),
        "b_m2_zero": report.b_m2 == 0,
        "a_bound_ok": report.a_sum_abs <= report.a_bound * (1 + 1e-6),
    }
    rows = [
        _row(field, "a_sum_abs", repr(report.a_sum_abs), d=args.d, k=args.k,
             t=args.t, size=len(E), trial=args.trial),
        _row(field, "a_bound", repr(report.a_bound), d=args.d, k=args.k,
             t=args.t, size=len(E), trial=args.trial),
        _row(field, "b_sum", str(report.b_sum), d=args.d, k=args.k,
             t=args.t, size=len(E), trial=args.trial),
        _row(field, "b_m2", str(report.b_m2), d=args.d, k=args.k,
             t=args.t, size=len(E), trial=args.trial),
    ]
    return payload, rows, 0 if ok else 1


def cmd_sharpness(args) -> tuple[dict, list[dict], int]:
    field = _resolve_field(args)
    E = sharpness_example(field, args.d, args.k, args.cap)
    dset = [e.index for e in distance_set(E, args.k)]
    ok = len(E) == field.q ** (args.d - args.k) and dset == [0]
    payload = {
        "command": "sharpness",
        "field": _field_meta(field, args.d, args.k),
        "size": len(E), "distances": dset, "degenerate": dset == [0],
    }
    rows = [_row(field, "sharpness_size", len(E), d=args.d, k=args.k),
            _row(field, "sharpness_distances", "|".join(map(str, dset)),
                 d=args.d, k=args.k)]
    return payload, rows, 0 if ok else 1


def cmd_threshold_sweep(args) -> tuple[dict, list[dict], int]:
    field = _resolve_field(args)
    sizes = None
    if args.sizes and args.sizes != "auto":
        sizes = tuple(int(x) for x in args.sizes.split(","))
    config = ExperimentConfig(
        p=field.p, s=field.s, d=args.d, k=args.k, C=Fraction(args.C),
        seed=args.seed, trials=args.trials, size_grid=sizes, cap=args.cap,
    )
    records, summaries = threshold_sweep(field, config, args.use_sharpness)
    payload = {
        "command": "threshold-sweep",
        "field": _field_meta(field, args.d, args.k),
        "config": {
            "C": str(config.C), "seed": config.seed, "trials": config.trials,
            "threshold_exponent": config.threshold_exponent,
            "threshold_size": config.threshold_size(field.q),
            "sizes": list(config.resolve_sizes(field.q)) if not args.use_sharpness
                     else [field.q ** (args.d - args.k)],
            "conjectural": args.d % 2 == 0,
        },
        "records": [r.as_json() for r in records],
        "summary": summaries,
    }
    rows = []
    for r in records:
        rows.append(_row(field, "full_coverage", int(r.full_coverage), d=r.d,
                         k=r.k, size=r.size, trial=r.trial))
        if r.missing_radii:
            rows.append(_row(field, "missing_radii",
                             "|".join(map(str, r.missing_radii)), d=r.d, k=r.k,
                             size=r.size, trial=r.trial))
    for summ in summaries:
        rows.append(_row(field, "coverage_fraction",
                         repr(summ["coverage_fraction"]), d=args.d, k=args.k,
                         size=summ["size"]))
    return payload, rows, 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_common(sub: argparse.ArgumentParser, *, need_d: bool = False,
                need_k: bool = False, sampled: bool = False) -> None:
    sub.add_argument("--p", type=int)
    sub.add_argument("--s", type=int, default=None)
    sub.add_argument("--q", type=int)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    sub.add_argument("--out", type=str, default=None)
    sub.add_argument("--cap", type=int, default=DEFAULT_CAP)
    sub.add_argument("--config", type=str, default=None,
                     help="JSON file supplying any of the flags by name")
    if need_d:
        sub.add_argument("--d", type=int, required=False)
    if need_k:
        sub.add_argument("--k", type=int, required=False)
    if sampled:
        sub.add_argument("--size", type=int, default=None)
        sub.add_argument("--trial", type=int, default=0)
        sub.add_argument("--use-sharpness", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ffdist",
        description="Exact-arithmetic toolkit for k-distance sets over finite fields",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("verify-identities", help="run the character-sum identity battery")
    _add_common(sp)
    sp.set_defaults(func=cmd_verify_identities)

    sp = subs.add_parser("sphere-ft", help="sphere Fourier transform, closed and/or brute")
    _add_common(sp, need_d=True, need_k=True)
    sp.add_argument("--t", type=int, required=False)
    sp.add_argument("--m", type=str, default=None, help='frequency "c1,...,cd" (element indices)')
    sp.add_argument("--mode", choices=("closed", "brute", "both"), default="both")
    sp.set_defaults(func=cmd_sphere_ft)

    sp = subs.add_parser("distance-set", help="k-distance set of a sampled point set")
    _add_common(sp, need_d=True, need_k=True, sampled=True)
    sp.set_defaults(func=cmd_distance_set)

    sp = subs.add_parser("nu", help="pair counts, direct vs spectral")
    _add_common(sp, need_d=True, need_k=True, sampled=True)
    sp.add_argument("--t", type=int, default=None)
    sp.set_defaults(func=cmd_nu)

    sp = subs.add_parser("bounds", help="A-part bound and B-decomposition diagnostics")
    _add_common(sp, need_d=True, need_k=True, sampled=True)
    sp.add_argument("--t", type=int, default=1)
    sp.set_defaults(func=cmd_bounds)

    sp = subs.add_parser("sharpness", help="the degenerate axis-aligned example")
    _add_common(sp, need_d=True, need_k=True)
    sp.set_defaults(func=cmd_sharpness)

    sp = subs.add_parser("threshold-sweep", help="coverage sweep over |E| sizes")
    _add_common(sp, need_d=True, need_k=True)
    sp.add_argument("--C", type=str, default="4", help="threshold multiplier (rational)")
    sp.add_argument("--trials", type=int, default=1)
    sp.add_argument("--sizes", type=str, default="auto",
                    help='"auto" or a comma-separated list of |E| values')
    sp.add_argument("--use-sharpness", action="store_true")
    sp.set_defaults(func=cmd_threshold_sweep)

    return parser


def _apply_config_file(args: argparse.Namespace, parser: argparse.ArgumentParser,
                       argv: Sequence[str]) -> None:
    if not getattr(args, "config", None):
        return
    with open(args.config, "r", encoding="utf-8") as fh:
        overrides = json.load(fh)
    if not isinstance(overrides, dict):
        raise ValueError("--config must contain a JSON object")
    explicit = {a.lstrip("-").split("=", 1)[0].replace("-", "_")
                for a in argv if a.startswith("--")}
    for key, value in overrides.items():
        attr = key.replace("-", "_")
        if attr == "format":
            attr = "fmt"
        if not hasattr(args, attr):
            raise ValueError(f"unknown config field {key!r}")
        if attr not in explicit:
            setattr(args, attr, value)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _apply_config_file(args, parser, argv)
        for required in ("d", "k"):
            if hasattr(args, required) and getattr(args, required) is None:
                raise ValueError(f"--{required} is required for this subcommand")
        if hasattr(args, "t") and args.t is None and args.command == "sphere-ft":
            raise ValueError("--t is required for sphere-ft")
        payload, rows, code = args.func(args)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = render_output(payload, rows, args.fmt)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: ``threestate {dist,fig1,sweep,verify,asympt}``.

Rates are given in raw units together with ``--delta`` and rescaled
internally; output headers echo the rescaled values.  Exit codes: 0 success,
1 a verification threshold failed, 2 invalid input, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
import time
from pathlib import Path

import numpy as np

from . import __version__
from .distribution import Distribution, Model, distribution, mean_mrna, pn_three_state, pn_two_state, two_state_mean
from .errors import NumericalError, ThreeStateError, ValidationError
from .hypergeom import (
    Branch,
    EvalPolicy,
    EvalReport,
    HypergeomSpec,
    _dispatch,
    f11_asymptotic,
    f22_asymptotic,
)
from .model import (
    FIG1A,
    FIG1A_TWO_STATE,
    FIG1B_K1_MINUS,
    RateSet,
    TwoStateRates,
    derived_constants,
    fig1b_rates,
    occupancies,
    rescale,
)
from .oracle import SsaConfig, master_steady_state, ssa_run, suggest_n_max, tv_distance

OUTPUT_DIR_ENV = "THREESTATE_OUTPUT_DIR"

# verify thresholds
MASTER_MAX_ABS = 1e-6
SSA_TV = 0.02
OCCUPANCY_SIGMA = 4.0
REDUCTION_MAX_ABS = 1e-10


# ---------------------------------------------------------------------------
# output helpers


def _atomic_write(path: Path, text: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, output: str | None):
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        _atomic_write(Path(output), text)


def _default_out_dir() -> Path:
    return Path(os.environ.get(OUTPUT_DIR_ENV, "."))


def _dist_metadata(dist: Distribution) -> dict:
    params = dist.rates
    if dist.model is Model.THREE_STATE:
        gamma = list(occupancies(params))
        mean = mean_mrna(params)
        rates = {k: v for k, v in params.as_dict().items() if k not in ("rescaled",)}
    else:
        on = params.k_plus / (params.k_plus + params.k_minus)
        gamma = [1.0 - on, on]
        mean = two_state_mean(params)
        rates = params.as_dict()
    return {
        "model": dist.model.value,
        "rates": rates,
        "gamma": gamma,
        "mean": mean,
        "tail_mass_bound": dist.tail_mass_bound,
        "n_max": dist.n_max,
    }


def dist_to_json(dist: Distribution, extra: dict | None = None) -> str:
    doc = _dist_metadata(dist)
    if extra:
        doc.update(extra)
    doc["n"] = list(range(dist.probs.size))
    doc["p_n"] = [float(p) for p in dist.probs]
    doc["cumulative"] = [float(c) for c in dist.cumulative()]
    return json.dumps(doc, indent=2) + "\n"


def dist_to_csv(dist: Distribution, extra: dict | None = None) -> str:
    meta = _dist_metadata(dist)
    if extra:
        meta.update(extra)
    buf = io.StringIO()
    for key, value in meta.items():
        if isinstance(value, dict):
            value = " ".join(f"{k}={v!r}" for k, v in value.items())
        elif isinstance(value, list):
            value = ",".join(repr(v) for v in value)
        elif isinstance(value, float):
            value = repr(value)
        buf.write(f"# {key}: {value}\n")
    buf.write("n,p_n,cumulative\n")
    for n, (p, c) in enumerate(zip(dist.probs, dist.cumulative())):
        buf.write(f"{n},{float(p)!r},{float(c)!r}\n")
    return buf.getvalue()


def read_csv_distribution(text: str) -> tuple[dict, np.ndarray]:
    """Parse :func:`dist_to_csv` output into (metadata strings, probabilities)."""
    meta, rows = {}, []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            meta[key.strip()] = value.strip()
        elif line.strip():
            rows.append(line)
    reader = csv.DictReader(rows)
    probs = np.array([float(r["p_n"]) for r in reader])
    return meta, probs


def _render(dist: Distribution, fmt: str, extra: dict | None = None) -> str:
    return dist_to_json(dist, extra) if fmt == "json" else dist_to_csv(dist, extra)


def _table(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})
    return buf.getvalue()


# ---------------------------------------------------------------------------
# argument handling


def _rate_args(parser, defaults: RateSet = FIG1A):
    g = parser.add_argument_group("three-state rates (raw units, divided by --delta)")
    g.add_argument("--k1m", type=float, default=defaults.k1_minus, help="poised -> inactive")
    g.add_argument("--k1p", type=float, default=defaults.k1_plus, help="inactive -> poised")
    g.add_argument("--k2m", type=float, default=defaults.k2_minus, help="active -> poised")
    g.add_argument("--k2p", type=float, default=defaults.k2_plus, help="poised -> active")
    g.add_argument("--nu", type=float, default=defaults.nu, help="production rate")
    g.add_argument("--delta", type=float, default=1.0, help="degradation rate")


def _rates_from(args) -> RateSet:
    raw = RateSet(k1_plus=args.k1p, k1_minus=args.k1m, k2_plus=args.k2p,
                  k2_minus=args.k2m, nu=args.nu, delta=args.delta)
    return rescale(raw)


def _format_arg(parser):
    parser.add_argument("--format", choices=("csv", "json"), default="csv")


def _float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


# ---------------------------------------------------------------------------
# subcommands


def cmd_dist(args) -> int:
    if args.two_state:
        delta = args.delta
        if not delta > 0:
            raise ValidationError("delta must be > 0")
        params = TwoStateRates(args.kp / delta, args.km / delta, args.nu / delta)
    else:
        params = _rates_from(args)
    dist = distribution(params, tail_bound=args.tail_bound, hard_cap=args.hard_cap)
    _emit(_render(dist, args.format, {"delta_input": args.delta}), args.output)
    return 0


def _fig1a(out_dir: Path, fmt: str) -> dict:
    three = distribution(FIG1A)
    two = distribution(FIG1A_TWO_STATE)
    _atomic_write(out_dir / f"fig1a_three_state.{fmt}", _render(three, fmt))
    _atomic_write(out_dir / f"fig1a_two_state.{fmt}", _render(two, fmt))
    size = max(three.probs.size, two.probs.size)
    p3 = np.pad(three.probs, (0, size - three.probs.size))
    p2 = np.pad(two.probs, (0, size - two.probs.size))
    return {
        "variant": "a",
        "tv_distance": tv_distance(three, two),
        "max_pointwise_difference": float(np.abs(p3 - p2).max()),
        "mean_three_state": mean_mrna(FIG1A),
        "mean_two_state": two_state_mean(FIG1A_TWO_STATE),
        "files": [f"fig1a_three_state.{fmt}", f"fig1a_two_state.{fmt}"],
    }


def _sweep_rows(base: RateSet, k1m_values, out_dir: Path | None, fmt: str, prefix: str):
    rows, files = [], []
    for k1m in k1m_values:
        rates = base.replace(k1_minus=k1m)
        dist = distribution(rates)
        g0, g1, g2 = occupancies(rates)
        rows.append({
            "k1_minus": k1m,
            "gamma0": g0, "gamma1": g1, "gamma2": g2,
            "mean": mean_mrna(rates),
            "n_max": dist.n_max,
            "tail_mass_bound": dist.tail_mass_bound,
        })
        if out_dir is not None:
            name = f"{prefix}_k1m_{k1m!r}.{fmt}"
            _atomic_write(out_dir / name, _render(dist, fmt))
            files.append(name)
    return rows, files


def _fig1b(out_dir: Path, fmt: str) -> dict:
    rows, files = _sweep_rows(FIG1A, FIG1B_K1_MINUS, out_dir, fmt, "fig1b")
    means = [r["mean"] for r in rows]
    return {
        "variant": "b",
        "curves": rows,
        "means_strictly_decreasing": all(a > b for a, b in zip(means, means[1:])),
        "files": files,
    }


def cmd_fig1(args) -> int:
    out_dir = Path(args.out_dir) if args.out_dir else _default_out_dir()
    summary = _fig1a(out_dir, args.format) if args.variant == "a" else _fig1b(out_dir, args.format)
    text = json.dumps(summary, indent=2) + "\n"
    _atomic_write(out_dir / f"fig1{args.variant}_summary.json", text)
    sys.stdout.write(text)
    return 0


def cmd_sweep(args) -> int:
    base = _rates_from(args)
    values = [v / args.delta for v in args.k1m_values]
    out_dir = Path(args.out_dir) if args.out_dir else None
    rows, _ = _sweep_rows(base, values, out_dir, args.format, "sweep")
    _emit(_table(rows, args.format), args.output)
    return 0


def verify_report(rates: RateSet, samples: int, seed: int, n_max: int | None = None,
                  workers: int = 1, replicas: int = 8, tail_bound: float = 1e-10) -> dict:
    """Run both oracles against the closed form; JSON-ready and deterministic."""
    closed = distribution(rates, tail_bound=tail_bound)
    if n_max is None:
        n_max = max(200, suggest_n_max(rates), closed.n_max)
    master = master_steady_state(rates, n_max)
    size = max(closed.probs.size, master.probs.size)
    pc = np.pad(closed.probs, (0, size - closed.probs.size))
    pm = np.pad(master.probs, (0, size - master.probs.size))
    master_err = float(np.abs(pc - pm).max())

    config = SsaConfig(rates, n_samples=samples, seed=seed, replicas=replicas, workers=workers)
    emp = ssa_run(config)
    tv = tv_distance(emp, closed)
    expected = list(occupancies(rates))
    fractions = emp.occupancy_fractions().tolist()
    z_scores = []
    for p, f in zip(expected, fractions):
        sd = math.sqrt(p * (1.0 - p) / emp.total)
        z_scores.append(0.0 if sd == 0 and f == p else (abs(f - p) / sd if sd > 0 else math.inf))

    report = {
        "rates": {k: v for k, v in rates.as_dict().items() if k != "rescaled"},
        "config": {
            "samples": int(samples),
            "seed": int(seed),
            "replicas": int(replicas),
            "sample_interval": config.sample_interval,
            "t_burn_in": config.t_burn_in,
            "n_max": int(n_max),
            "tail_bound": tail_bound,
        },
        "closed_form_vs_master": {
            "max_abs_error": master_err,
            "threshold": MASTER_MAX_ABS,
            "pass": master_err < MASTER_MAX_ABS,
        },
        "closed_form_vs_ssa": {
            "tv_distance": tv,
            "empirical_mean": emp.mean(),
            "closed_form_mean": mean_mrna(rates),
            "threshold": SSA_TV,
            "pass": tv < SSA_TV,
        },
        "occupancy": {
            "expected": expected,
            "empirical": fractions,
            "z_scores": z_scores,
            "threshold_sigma": OCCUPANCY_SIGMA,
            "pass": all(z <= OCCUPANCY_SIGMA for z in z_scores),
        },
    }
    if rates.k1_minus == 0:
        diffs = [abs(pn_three_state(rates, n) - pn_two_state(rates.k2_plus, rates.k2_minus, rates.nu, n))
                 for n in range(closed.n_max + 1)]
        report["two_state_reduction"] = {
            "identity": "p_n(three-state, k1-=0) == p_n(two-state, k+=k2+, k-=k2-)",
            "max_abs_difference": max(diffs),
            "threshold": REDUCTION_MAX_ABS,
            "pass": max(diffs) < REDUCTION_MAX_ABS,
        }
    report["pass"] = all(v["pass"] for v in report.values() if isinstance(v, dict) and "pass" in v)
    return report


def cmd_verify(args) -> int:
    rates = _rates_from(args)
    report = verify_report(rates, args.samples, args.seed, args.n_max, args.workers,
                           args.replicas, args.tail_bound)
    _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.output)
    return 0 if report["pass"] else 1


def _convergent_value(spec: HypergeomSpec) -> EvalReport:
    # dispatcher with asymptotics switched off: direct or rearranged series
    return _dispatch(spec, EvalPolicy(series_threshold=math.inf), lambda: None)


def asympt_rows(kind: str, params: tuple, z_values) -> list[dict]:
    rows = []
    for z in z_values:
        if kind == "1f1":
            spec = HypergeomSpec((params[0],), (params[1],), z)
            asym = lambda: f11_asymptotic(params[0], params[1], z)
        else:
            spec = HypergeomSpec(params[:2], params[2:], z)
            asym = lambda: f22_asymptotic(*params, z)
        t0 = time.perf_counter()
        ref = _convergent_value(spec)
        t1 = time.perf_counter()
        try:
            rep = asym()
            value, branch, terms = rep.value, rep.branch.value, rep.terms_used
        except ThreeStateError:
            value, branch, terms = math.nan, "undefined", 0
        t2 = time.perf_counter()
        rel = abs(value - ref.value) / abs(ref.value) if ref.value != 0 else abs(value)
        rows.append({
            "z": float(z),
            "series": ref.value,
            "series_method": "direct" if ref.branch is Branch.SERIES else ref.branch.value,
            "asymptotic": value,
            "rel_diff": rel,
            "branch": branch,
            "terms_used": terms,
            "series_seconds": t1 - t0,
            "asymptotic_seconds": t2 - t1,
        })
    return rows


def cmd_asympt(args) -> int:
    if args.kind == "1f1":
        params = (args.a, args.b)
    elif args.fig1a_params:
        dc = derived_constants(FIG1A)
        params = (dc.K2_minus, dc.K2_plus, dc.K1_minus, dc.K1_plus)
    else:
        params = (args.a1, args.a2, args.b1, args.b2)
    if args.z is not None:
        z_values = args.z
    elif args.nu_multiples:
        z_values = [-FIG1A.nu * k for k in range(1, args.nu_multiples + 1)]
    else:
        z_values = np.linspace(args.z_min, args.z_max, args.z_num).tolist()
    _emit(_table(asympt_rows(args.kind, params, z_values), args.format), args.output)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="threestate",
        description="Steady-state mRNA distribution of a three-state gene.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="closed-form copy-number distribution")
    model = p.add_mutually_exclusive_group()
    model.add_argument("--three-state", action="store_true", default=True)
    model.add_argument("--two-state", action="store_true")
    _rate_args(p)
    g = p.add_argument_group("two-state rates (raw units)")
    g.add_argument("--kp", type=float, default=FIG1A_TWO_STATE.k_plus, help="off -> on")
    g.add_argument("--km", type=float, default=FIG1A_TWO_STATE.k_minus, help="on -> off")
    p.add_argument("--tail-bound", type=float, default=1e-10)
    p.add_argument("--hard-cap", type=int, default=10_000)
    p.add_argument("--output", "-o")
    _format_arg(p)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("fig1", help="figure presets: (a) three- vs two-state, (b) k1- sweep")
    p.add_argument("variant", choices=("a", "b"))
    p.add_argument("--out-dir", help=f"default: ${OUTPUT_DIR_ENV} or the current directory")
    _format_arg(p)
    p.set_defaults(func=cmd_fig1)

    p = sub.add_parser("sweep", help="sweep the inactivation rate k1-")
    _rate_args(p)
    p.add_argument("--k1m-values", type=_float_list, default=list(FIG1B_K1_MINUS))
    p.add_argument("--out-dir", help="also write each curve here")
    p.add_argument("--output", "-o")
    _format_arg(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="check the closed form against SSA and master equation")
    _rate_args(p)
    p.add_argument("--samples", type=int, default=200_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--replicas", type=int, default=8)
    p.add_argument("--tail-bound", type=float, default=1e-10)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("asympt", help="series vs asymptotic accuracy/timing table")
    p.add_argument("kind", choices=("1f1", "2f2"))
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--b", type=float, default=2.0)
    p.add_argument("--a1", type=float, default=0.8)
    p.add_argument("--a2", type=float, default=2.3)
    p.add_argument("--b1", type=float, default=1.9)
    p.add_argument("--b2", type=float, default=4.0)
    p.add_argument("--fig1a-params", action="store_true",
                   help="2f2 with the K parameters of the fig1 a preset")
    p.add_argument("--z", type=_float_list, default=None, help="comma-separated arguments")
    p.add_argument("--nu-multiples", type=int, default=0,
                   help="use z = -nu*{1..N} with the fig1 a preset nu")
    p.add_argument("--z-min", type=float, default=-100.0)
    p.add_argument("--z-max", type=float, default=-10.0)
    p.add_argument("--z-num", type=int, default=10)
    p.add_argument("--output", "-o")
    _format_arg(p)
    p.set_defaults(func=cmd_asympt)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"threestate: invalid input: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"threestate: numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

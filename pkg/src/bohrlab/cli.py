"""Command-line front end: named experiments, frozen seeds, persistent records.

Subcommands: radius, sweep, probe, verify-bounds, axioms, independence,
report.  Every run writes one JSON record into the results directory
(``--results-dir`` or ``$BOHRLAB_RESULTS``, default ``./results``) named by
the content hash of its configuration.  Exit codes: 0 all asserted
corridors pass, 1 corridor failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import dataclasses
import math
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import records as rec
from .domains import ReinhardtDomain, domain_spec, parse_domain
from .functionals import (
    MAJORANT_SUP,
    TERMWISE_SUP,
    SeminormFamily,
    check_axioms,
)
from .records import ExperimentConfig, ExperimentRecord
from .search import (
    AdmissibleGenerator,
    bracket_consistency,
    family_infimum,
    function_radius,
    geometric_alpha_grid,
    independence_experiment,
    mobius_family,
    mobius_in_first_variable_family,
    probe_no_violation,
    random_test_series,
    witness_upper_bound_l1,
)
from .series import TruncatedPowerSeries, compose_linear, mobius_series
from .targets import parse_target

DEFAULT_RESULTS_ENV = "BOHRLAB_RESULTS"


def _seminorm(mode: str, domain: ReinhardtDomain) -> SeminormFamily:
    if mode == "r1":
        return SeminormFamily(MAJORANT_SUP, domain)
    if mode == "r2":
        return SeminormFamily(TERMWISE_SUP, domain)
    raise ValueError(f"mode must be r1 or r2, got {mode!r}")


def parse_alpha_grid(spec: str) -> np.ndarray:
    """Grid specs: geometric:COUNT[:START:STOP], linear:COUNT:START:STOP, list:a,b,..."""
    parts = spec.split(":")
    if parts[0] == "geometric":
        count = int(parts[1])
        start = float(parts[2]) if len(parts) > 2 else 0.01
        stop = float(parts[3]) if len(parts) > 3 else 0.999
        return geometric_alpha_grid(count, start, stop)
    if parts[0] == "linear":
        return np.linspace(float(parts[2]), float(parts[3]), int(parts[1]))
    if parts[0] == "list":
        return np.array([float(x) for x in parts[1].split(",")])
    raise ValueError(f"bad alpha grid spec {spec!r}")


def _estimate_entry(est, target: str, mode: str, domain: ReinhardtDomain) -> dict:
    return {
        "target": target,
        "mode": mode,
        "n": domain.dimension,
        "p": "inf" if domain.is_polydisk else domain.p,
        "estimate": dataclasses.asdict(est),
    }


# -- command implementations -----------------------------------------------------


def _run_radius(params: dict) -> tuple:
    domain = parse_domain(params["domain"])
    target = parse_target(params["target"])
    S = _seminorm(params["mode"], domain)
    degree = params["degree"]
    if params["family"] != "mobius":
        raise ValueError(f"radius knows only the mobius family, got {params['family']!r}")
    f = mobius_series(params["alpha"], degree)
    if domain.dimension > 1:
        (label, f), = mobius_in_first_variable_family(
            [params["alpha"]], degree, domain.dimension
        )
    else:
        label = f"mobius(alpha={params['alpha']:.10g})"
    est = function_radius(f, S, target, params["tol"], label)
    payload = {
        "estimates": [_estimate_entry(est, params["target"], params["mode"], domain)]
    }
    return payload, est.tail_guard_ok


def _sweep_members(params: dict, domain: ReinhardtDomain, alphas) -> list:
    family = params["family"]
    degree = params["degree"]
    if family == "mobius":
        if domain.dimension == 1:
            return mobius_family(alphas, degree)
        return mobius_in_first_variable_family(alphas, degree, domain.dimension)
    if family == "mobius-z1":
        return mobius_in_first_variable_family(alphas, degree, domain.dimension)
    raise ValueError(f"unknown sweep family {family!r}")


def _run_sweep(params: dict) -> tuple:
    domain = parse_domain(params["domain"])
    alphas = parse_alpha_grid(params["alpha_grid"])
    if params["family"] == "mobius-l1":
        est = witness_upper_bound_l1(
            domain.dimension, alphas, params["tol"], params["degree"]
        )
        sweep_points = []
        target_spec = "disk:0,0,1"
        mode = "r2"
        l1_domain = ReinhardtDomain(domain.dimension, 1.0)
        payload = {
            "estimates": [_estimate_entry(est, target_spec, mode, l1_domain)],
            "sweep_points": sweep_points,
        }
    else:
        target = parse_target(params["target"])
        S = _seminorm(params["mode"], domain)
        members = _sweep_members(params, domain, alphas)
        sweep_points = []
        for (label, f), a in zip(members, alphas):
            e = function_radius(f, S, target, params["tol"], label)
            sweep_points.append(
                {
                    "alpha": float(a),
                    "radius": e.estimate,
                    "lower": e.lower,
                    "upper": e.upper,
                }
            )
        est = family_infimum(members, S, target, params["tol"])
        payload = {
            "estimates": [
                _estimate_entry(est, params["target"], params["mode"], domain)
            ],
            "sweep_points": sweep_points,
        }
    ok = est.tail_guard_ok
    if params.get("corridor"):
        lo, hi = params["corridor"]
        inside = lo <= est.lower and est.upper <= hi
        payload["corridor"] = {"lo": lo, "hi": hi, "passed": inside}
        ok = ok and inside
    return payload, ok


def _run_probe(params: dict) -> tuple:
    domain = parse_domain(params["domain"])
    target = parse_target(params["target"])
    S = _seminorm(params["mode"], domain)
    gen = AdmissibleGenerator(
        target=target,
        domain=domain,
        inner_degree=params["inner_degree"],
        contraction=params["contraction"],
        seed=params["seed"],
        degree_cap=params["degree"],
    )
    extra = []
    if params.get("inject_extremal") is not None:
        a = params["inject_extremal"]
        extra = mobius_in_first_variable_family([a], 60, domain.dimension)
    from .functionals import bohr_condition

    margins = []
    for s in gen.samples(params["count"]):
        margins.append(bohr_condition(s.series, S, params["r"], target).margin)
    for label, f in extra:
        margins.append(bohr_condition(f, S, params["r"], target).margin)
    est = probe_no_violation(
        gen, S, target, params["r"], params["count"], extra_members=extra
    )
    payload = {
        "estimates": [_estimate_entry(est, params["target"], params["mode"], domain)],
        "margins": margins,
        "violations": est.violations,
    }
    return payload, est.violations == 0


def _run_verify_bounds(params: dict) -> tuple:
    domain = parse_domain(params["domain"])
    report = bracket_consistency(
        domain,
        params["mode"],
        count=params["count"],
        seed=params["seed"],
        tol=params["tol"],
    )
    payload = {
        "items": [dataclasses.asdict(item) for item in report.items],
        "mode": report.mode,
        "domain": report.domain,
    }
    return payload, report.passed


def _run_axioms(params: dict) -> tuple:
    domain = parse_domain(params["domain"])
    S = SeminormFamily(
        MAJORANT_SUP if params["seminorm"] == "r1" else TERMWISE_SUP, domain
    )
    funcs = [
        random_test_series(params["seed"], i, domain.dimension, params["degree"])
        for i in range(2 * params["trials"])
    ]
    pairs = [(funcs[2 * i], funcs[2 * i + 1]) for i in range(params["trials"])]
    r_grid = [0.1 * k for k in range(1, 10)]
    report = check_axioms(S, funcs, r_grid, tol=params["tol"], pairs=pairs)
    skip_fraction = report.submult_skipped / max(report.submult_total, 1)
    payload = {
        "checked": report.checked,
        "worst_margin": report.worst_margin,
        "failures": [dataclasses.asdict(x) for x in report.failures],
        "submult_skipped": report.submult_skipped,
        "submult_total": report.submult_total,
    }
    return payload, report.passed and skip_fraction < 0.05


def _run_independence(params: dict) -> tuple:
    domain = parse_domain(params["domain"])
    S = _seminorm(params["mode"], domain)
    targets = [parse_target(t) for t in params["targets"]]
    alphas = parse_alpha_grid(params["alpha_grid"])
    report = independence_experiment(
        S,
        targets,
        tol=params["tol"],
        alphas=alphas,
        degree=params["degree"],
        function_tol=params["function_tol"],
    )
    payload = {
        "estimates": [
            {
                "target": spec,
                "asserted": asserted,
                "mode": params["mode"],
                "n": domain.dimension,
                "p": "inf" if domain.is_polydisk else domain.p,
                "estimate": dataclasses.asdict(est),
            }
            for spec, est, asserted in report.estimates
        ],
        "spread": report.spread,
        "tolerance": report.tolerance,
    }
    return payload, report.passed


_RUNNERS = {
    "radius": _run_radius,
    "sweep": _run_sweep,
    "probe": _run_probe,
    "verify-bounds": _run_verify_bounds,
    "axioms": _run_axioms,
    "independence": _run_independence,
}


def run(config: ExperimentConfig) -> ExperimentRecord:
    """Dispatch one experiment; the record's `passed` mirrors the exit status."""
    runner = _RUNNERS.get(config.command)
    if runner is None:
        raise ValueError(f"unknown command {config.command!r}")
    t0 = time.perf_counter()
    payload, passed = runner(config.params)
    record = ExperimentRecord(config, payload, passed)
    record.finalize(time.perf_counter() - t0)
    return record


# -- argument parsing --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bohrlab",
        description="Bohr-radius experiments on Reinhardt domains",
    )
    parser.add_argument(
        "--results-dir",
        default=None,
        help=f"record directory (default ${DEFAULT_RESULTS_ENV} or ./results)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        p.add_argument("--tol", type=float, default=1e-6)
        p.add_argument("--degree", type=int, default=None)
        if seed:
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("radius", help="critical radius of one family member")
    p.add_argument("--family", default="mobius")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--domain", default="lp:inf:1")
    p.add_argument("--target", default="disk:0,0,1")
    p.add_argument("--mode", choices=["r1", "r2"], default="r1")
    common(p, seed=False)

    p = sub.add_parser("sweep", help="family infimum over a parameter grid")
    p.add_argument("--family", default="mobius", choices=["mobius", "mobius-z1", "mobius-l1"])
    p.add_argument("--alpha-grid", dest="alpha_grid", default="geometric:200")
    p.add_argument("--domain", default="lp:inf:1")
    p.add_argument("--target", default="disk:0,0,1")
    p.add_argument("--mode", choices=["r1", "r2"], default="r1")
    p.add_argument(
        "--corridor",
        default=None,
        help="assert the infimum bracket lies in LO,HI",
    )
    common(p, seed=False)

    p = sub.add_parser("probe", help="seeded no-violation probe at a fixed radius")
    p.add_argument("--domain", required=True)
    p.add_argument("--target", default="disk:0,0,1")
    p.add_argument("--mode", choices=["r1", "r2"], default="r2")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--inner-degree", dest="inner_degree", type=int, default=4)
    p.add_argument("--contraction", type=float, default=0.8)
    p.add_argument(
        "--inject-extremal",
        dest="inject_extremal",
        type=float,
        default=None,
        help="also test the near-extremal mobius member with this alpha",
    )
    common(p)

    p = sub.add_parser("verify-bounds", help="consistency suite for printed brackets")
    p.add_argument("--domain", required=True)
    p.add_argument("--mode", choices=["r1", "r2"], required=True)
    p.add_argument("--count", type=int, default=500)
    common(p)

    p = sub.add_parser("axioms", help="semi-norm axiom property suite")
    p.add_argument("--seminorm", choices=["r1", "r2"], default="r1")
    p.add_argument("--domain", default="lp:inf:1")
    p.add_argument("--trials", type=int, default=100)
    common(p)
    p.set_defaults(tol=1e-9)

    p = sub.add_parser("independence", help="target-independence experiment")
    p.add_argument(
        "--target",
        dest="targets",
        action="append",
        required=True,
        help="repeatable target spec",
    )
    p.add_argument("--domain", default="lp:inf:1")
    p.add_argument("--mode", choices=["r1", "r2"], default="r1")
    p.add_argument("--alpha-grid", dest="alpha_grid", default="geometric:80")
    p.add_argument("--function-tol", dest="function_tol", type=float, default=1e-6)
    common(p, seed=False)
    p.set_defaults(tol=5e-3)

    p = sub.add_parser("report", help="render records into a table and figures")
    p.add_argument("records", nargs="+", help="record JSON files")
    p.add_argument("--format", choices=["csv", "text"], default="csv")
    p.add_argument("--out", default=None, help="table output path (default stdout)")
    p.add_argument("--no-figures", dest="figures", action="store_false")
    return parser


_DEGREE_DEFAULTS = {
    "radius": 60,
    "sweep": 40,
    "probe": None,  # generator picks the per-dimension cap
    "verify-bounds": 40,
    "axioms": 6,
    "independence": 60,
}


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    skip = {"command", "results_dir"}
    params = {k: v for k, v in vars(args).items() if k not in skip}
    if params.get("degree") is None:
        params["degree"] = _DEGREE_DEFAULTS.get(args.command)
    if args.command == "probe" and params["degree"] is None:
        params.pop("degree")
        params["degree"] = None
    if args.command == "sweep" and params.get("corridor"):
        lo, hi = (float(x) for x in params["corridor"].split(","))
        params["corridor"] = [lo, hi]
    return ExperimentConfig(args.command, params)


def _run_report(args: argparse.Namespace) -> int:
    recs = [rec.load_record(Path(p)) for p in args.records]
    table = rec.emit_table(recs, args.format)
    if args.out:
        out = Path(args.out)
        out.write_text(table)
        print(f"wrote {out}")
        stem = out.with_suffix("")
    else:
        sys.stdout.write(table)
        stem = Path("report")
    if args.figures:
        for path in rec.render_figures(recs, stem):
            print(f"wrote {path}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "report":
        try:
            return _run_report(args)
        except (ValueError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2

    results_dir = args.results_dir or os.environ.get(DEFAULT_RESULTS_ENV, "results")
    try:
        config = _config_from_args(args)
        record = run(config)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    path = record.save(Path(results_dir))
    for entry in record.payload.get("estimates", []):
        est = entry["estimate"]
        print(
            f"{config.command} {entry.get('target', '')} {entry.get('mode', '')}: "
            f"radius in [{est['lower']:.10g}, {est['upper']:.10g}] "
            f"witness={est['witness']}"
        )
    if "spread" in record.payload:
        print(f"max pairwise spread: {record.payload['spread']:.6g}")
    if "items" in record.payload:
        for item in record.payload["items"]:
            flag = "PASS" if item["passed"] else "FAIL"
            if not item["asserted"]:
                flag = "INFO"
            print(f"[{flag}] {item['name']}: {item['detail']}")
    if "failures" in record.payload and record.payload["failures"]:
        for f in record.payload["failures"][:10]:
            print(f"[FAIL] {f['axiom']} {f['description']} margin={f['margin']:.3g}")
    print(f"record: {path}")
    print("PASS" if record.passed else "FAIL")
    return 0 if record.passed else 1


if __name__ == "__main__":
    sys.exit(main())

"""Batch command-line front end: scenario files in, CSV/report files out.

Subcommands:
  ccdf       evaluate ccdf curves (analytic, simulation or both) to CSV
  sweep      sweep one variable and evaluate curves at every value
  fit-report tabulate the fitted vs empirical joint-fading cdfs
  validate   run the full validation battery and write a report

Exit codes: 0 success, 1 validation failure, 2 usage/parse error,
3 numerical failure.  Output files are written atomically (temp file plus
rename), so no error path leaves a partial file behind.
"""
from __future__ import annotations

import argparse
import csv
import io
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from .analytic import NumericalFailure, evaluate_modes
from .fading import FadingFitParams, cdf_hj, cdf_hjr, sample_hj, sample_hjr
from .metrics import ks_distance
from .montecarlo import run_campaign
from .params import ScenarioGeometry, NetworkParams, SinrMode
from .scenario import Scenario, ScenarioError, load_scenario
from .validation import all_primary_passed, run_all

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

_ENGINE_ORDER = {"analytic": 0, "sim": 1}


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _atomic_write(path: str | Path, text: str) -> None:
    """Write via a temp file in the target directory plus atomic rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), prefix=path.name + ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _csv_text(header: list[str], rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# ccdf curves
# ---------------------------------------------------------------------------

def _curve_rows(scenario: Scenario, params: NetworkParams, geom: ScenarioGeometry,
                engine: str) -> list[tuple]:
    """(mode_order, theta_db, engine, value, stderr) tuples for one
    parameter point."""
    rows: list[tuple] = []
    theta = 10.0 ** (scenario.theta_db / 10.0)
    order = {m: i for i, m in enumerate(scenario.modes)}
    if engine in ("analytic", "both"):
        ana = evaluate_modes(scenario.modes, theta, params, geom)
        for mode in scenario.modes:
            for th_db, val in zip(scenario.theta_db, ana[mode]):
                rows.append((order[mode], mode.value, th_db, "analytic", val, None))
    if engine in ("sim", "both"):
        curves = run_campaign(scenario.modes, theta, params, geom, scenario.sim)
        for curve in curves:
            for th_db, val, se in zip(scenario.theta_db, curve.values, curve.stderr):
                rows.append((order[curve.mode], curve.mode.value, th_db, "sim", val, se))
    return rows


def cmd_ccdf(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    rows = _curve_rows(scenario, scenario.params, scenario.geom, args.engine)
    rows.sort(key=lambda r: (r[0], r[2], _ENGINE_ORDER[r[3]]))
    out = [[_fmt(r[2]), r[1], r[3], _fmt(r[4]), "" if r[5] is None else _fmt(r[5])]
           for r in rows]
    _atomic_write(args.output,
                  _csv_text(["theta_db", "mode", "engine", "value", "stderr"], out))
    return EXIT_OK


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------

_SWEEP_VARIABLES = ("r1", "r2", "p_h", "m_slots", "k_total")


def _swept_setup(scenario: Scenario, variable: str, value: float):
    params, geom = scenario.params, scenario.geom
    try:
        if variable == "r1":
            return params, ScenarioGeometry(r1=value * geom.v, r2=geom.r2,
                                            r_r=geom.r_r, v=geom.v)
        if variable == "r2":
            return params, ScenarioGeometry(r1=geom.r1, r2=value * geom.v,
                                            r_r=geom.r_r, v=geom.v)
        if variable == "p_h":
            return NetworkParams(lam=params.lam, eta=params.eta, sigma2=params.sigma2,
                                 p_l=params.p_l, p_h=value, m_slots=params.m_slots,
                                 p_r=params.p_r), geom
        if variable == "m_slots":
            if value != int(value):
                raise ScenarioError(f"m_slots sweep value must be an integer, got {value}")
            return NetworkParams(lam=params.lam, eta=params.eta, sigma2=params.sigma2,
                                 p_l=params.p_l, p_h=params.p_h, m_slots=int(value),
                                 p_r=params.p_r), geom
        # k_total: sweep r1 while holding r1 + r2 at the scenario's total
        k = geom.r1 + geom.r2
        r1 = value * geom.v
        return params, ScenarioGeometry(r1=r1, r2=k - r1, r_r=geom.r_r, v=geom.v)
    except ValueError as exc:
        raise ScenarioError(f"sweep {variable}={value}: {exc}") from exc


def cmd_sweep(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    if args.variable not in _SWEEP_VARIABLES:
        raise ScenarioError(
            f"sweep variable must be one of {_SWEEP_VARIABLES}, got {args.variable!r}")
    values = [float(tok) for tok in args.values.replace(",", " ").split()]
    if not values:
        raise ScenarioError("sweep needs at least one value")

    rows: list[tuple] = []
    for value in values:
        params, geom = _swept_setup(scenario, args.variable, value)
        for r in _curve_rows(scenario, params, geom, args.engine):
            rows.append((r[0], r[1], r[2], value, r[3], r[4], r[5]))
    rows.sort(key=lambda r: (r[0], r[2], r[3], _ENGINE_ORDER[r[4]]))
    out = [[args.variable, _fmt(r[3]), _fmt(r[2]), r[1], r[4], _fmt(r[5]),
            "" if r[6] is None else _fmt(r[6])] for r in rows]
    _atomic_write(args.output, _csv_text(
        ["sweep_var", "sweep_value", "theta_db", "mode", "engine", "value", "stderr"],
        out))
    return EXIT_OK


# ---------------------------------------------------------------------------
# fading fit report
# ---------------------------------------------------------------------------

def cmd_fit_report(args: argparse.Namespace) -> int:
    rng = np.random.default_rng([args.seed, 3_000_000])
    draws = args.draws
    hj = np.sort(sample_hj(rng, draws))
    hjr = np.sort(sample_hjr(rng, draws))

    fit_default = FadingFitParams.default("half_bistatic")
    fit_mm = FadingFitParams.default("mean_matched")
    series = [
        ("hj", hj, np.linspace(0.0, 8.0, 161), lambda x: cdf_hj(x, fit_default)),
        ("hjr_half_bistatic", hjr, np.linspace(0.0, 16.0, 161),
         lambda x: cdf_hjr(x, fit_default)),
        ("hjr_mean_matched", hjr, np.linspace(0.0, 16.0, 161),
         lambda x: cdf_hjr(x, fit_mm)),
    ]
    rows = []
    for name, sample, grid, fit_fn in series:
        emp = np.searchsorted(sample, grid, side="right") / sample.size
        for x, e, f in zip(grid, emp, np.asarray(fit_fn(grid))):
            rows.append(["point", name, _fmt(x), _fmt(e), _fmt(f)])
    for name, sample, _, fit_fn in series:
        rows.append(["ks", name, "", _fmt(ks_distance(sample, fit_fn)), ""])
    _atomic_write(args.output, _csv_text(
        ["record", "series", "x", "empirical", "fitted"], rows))
    return EXIT_OK


# ---------------------------------------------------------------------------
# validation battery
# ---------------------------------------------------------------------------

def cmd_validate(args: argparse.Namespace) -> int:
    outdir = Path(args.output_dir)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
        probe = tempfile.TemporaryFile(dir=outdir)
        probe.close()
    except OSError as exc:
        print(f"error: output directory not writable: {exc}", file=sys.stderr)
        return EXIT_USAGE

    results = run_all(trials=args.trials, seed=args.seed)
    for result in results:
        print(result.line())
    rows = [[r.cid, r.measured, r.expected, r.tolerance,
             "pass" if r.passed else "fail",
             "primary" if r.primary else "info", r.detail] for r in results]
    _atomic_write(outdir / "validation_report.csv", _csv_text(
        ["id", "measured", "expected", "tolerance", "pass", "kind", "detail"], rows))
    return EXIT_OK if all_primary_passed(results) else EXIT_VALIDATION


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isacsim",
        description="SINR coverage curves for joint communication-and-sensing "
                    "networks: closed forms plus a seeded Monte Carlo simulator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ccdf", help="evaluate ccdf curves to CSV")
    p.add_argument("--scenario", required=True, help="scenario file path")
    p.add_argument("--output", required=True, help="output CSV path")
    p.add_argument("--engine", choices=("analytic", "sim", "both"), default="both")
    p.set_defaults(func=cmd_ccdf)

    p = sub.add_parser("sweep", help="sweep one variable and evaluate curves")
    p.add_argument("--scenario", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--variable", required=True,
                   help="one of r1, r2, p_h, m_slots, k_total (r1/r2/k_total "
                        "values are multiples of v; k_total sweeps r1 while "
                        "holding r1 + r2 at the scenario total)")
    p.add_argument("--values", required=True,
                   help="comma- or space-separated sweep values")
    p.add_argument("--engine", choices=("analytic", "sim", "both"), default="analytic")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("fit-report", help="fitted vs empirical joint-fading cdfs")
    p.add_argument("--output", required=True)
    p.add_argument("--draws", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(func=cmd_fit_report)

    p = sub.add_parser("validate", help="run the validation battery")
    p.add_argument("--output-dir", required=True)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

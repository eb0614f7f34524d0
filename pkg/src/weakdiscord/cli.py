"""Command-line front end.

    weakdiscord quantify --state werner:mu=0.5 --quantifier wqd --epsilon 0.5
    weakdiscord sweep --mu-grid 0:1:11 --epsilon-grid 0:1:11 --out fig1.csv
    weakdiscord verify --suite theorem1 --samples 100 --seed 1

Exit codes: 0 success, 1 property failure (verify), 2 bad arguments or
state spec, 3 unsupported dimension, 4 numerical validation failure,
5 output file could not be written.
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
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import quantifiers as q
from .info import quantum_mutual_info
from .linalg import DimensionError, ValidationError
from .optimize import OptimizerConfig
from .states import StateSpecError, state_from_spec, werner_singlet, werner_wqd_closed_form
from .verify import SUITES, run_suite

EXIT_PROPERTY, EXIT_PARSE, EXIT_DIM, EXIT_NUMERIC, EXIT_IO = 1, 2, 3, 4, 5

QUANTIFIERS = ("qd", "wqd", "sqd", "frakd", "syqd", "sywqd", "classical", "mutual_info")
SWEEP_FIELDS = ("mu", "epsilon", "wqd_numeric", "wqd_closed_form", "qd", "theta_opt", "phi_opt")


class UsageError(ValueError):
    pass


def fmt(v: float) -> str:
    """9 significant digits, never in scientific notation."""
    v = float(v)
    if v == 0:
        v = 0.0
    return np.format_float_positional(v, precision=9, unique=False, fractional=False, trim="-")


def _round9(v: float) -> float:
    return float(fmt(v))


def parse_grid(text: str) -> np.ndarray:
    try:
        lo, hi, n = text.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError as exc:
        raise UsageError(f"grid must look like lo:hi:n, got {text!r}") from exc
    if n < 1 or not (0.0 <= lo <= 1.0 and 0.0 <= hi <= 1.0):
        raise UsageError(f"grid {text!r} must be non-empty and lie within [0, 1]")
    return np.linspace(lo, hi, n)


def _config(args) -> OptimizerConfig:
    return OptimizerConfig(theta_points=args.theta_points, phi_points=args.phi_points)


def _need(args, name: str, flag: str):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--quantifier {args.quantifier} requires {flag}")
    return value


def quantify(state, quantifier: str, config: OptimizerConfig, epsilon=None, epsilon_a=None, x=None) -> dict:
    """Evaluate one quantifier and return a flat, JSON-ready report."""
    report = {"quantifier": quantifier}
    if quantifier == "mutual_info":
        report["value"] = quantum_mutual_info(state)
        return report
    if quantifier == "qd":
        res = q.discord(state, config)
    elif quantifier == "wqd":
        res = q.weak_discord(state, epsilon, config)
    elif quantifier == "sqd":
        res = q.super_discord(state, x, config)
    elif quantifier == "frakd":
        res = q.weak_collapse_discord(state, epsilon, config)
    elif quantifier == "syqd":
        res = q.sym_discord(state, config)
    elif quantifier == "sywqd":
        res = q.sym_weak_discord(state, epsilon_a, epsilon, config)
    elif quantifier == "classical":
        res = q.classical_correlations(state, config)
    else:
        raise UsageError(f"unknown quantifier {quantifier!r}")
    report["value"] = res.value
    report["theta_b"] = res.measurement.theta
    report["phi_b"] = res.measurement.phi
    if res.measurement_a is not None:
        report["theta_a"] = res.measurement_a.theta
        report["phi_a"] = res.measurement_a.phi
    report.update({f"diag_{k}": v for k, v in asdict(res.diagnostics).items()})
    return report


def cmd_quantify(args) -> int:
    state = state_from_spec(args.state)
    needs = {
        "wqd": [("epsilon", "--epsilon")],
        "frakd": [("epsilon", "--epsilon")],
        "sqd": [("x", "--x")],
        "sywqd": [("epsilon", "--epsilon"), ("epsilon_a", "--epsilon-a")],
    }
    for name, flag in needs.get(args.quantifier, []):
        _need(args, name, flag)
    report = quantify(state, args.quantifier, _config(args), args.epsilon, args.epsilon_a, args.x)
    report = {"state": args.state, **report}
    scale = 1.0 if args.log_base == "e" else 1.0 / math.log(2)
    report["value"] *= scale
    report["unit"] = "nats" if args.log_base == "e" else "bits"
    if args.format == "json":
        print(json.dumps(report, default=float))
    else:
        for key, value in report.items():
            print(f"{key:>18}: {fmt(value) if isinstance(value, (float, np.floating)) else value}")
    return 0


@dataclass(frozen=True)
class SweepRecord:
    mu: float
    epsilon: float
    wqd_numeric: float
    wqd_closed_form: float
    qd: float
    theta_opt: float
    phi_opt: float


def sweep_row(mu: float, epsilons, config: OptimizerConfig) -> list[SweepRecord]:
    """All records for one mu; the discord is shared across the row."""
    rho = werner_singlet(mu)
    qd = q.discord(rho, config).value
    rows = []
    for eps in epsilons:
        res = q.weak_discord(rho, eps, config)
        rows.append(
            SweepRecord(mu, eps, res.value, werner_wqd_closed_form(mu, eps), qd,
                        res.measurement.theta, res.measurement.phi)
        )
    return rows


def run_sweep(mus, epsilons, config: OptimizerConfig, jobs: int = 1) -> list[SweepRecord]:
    mus = [float(m) for m in mus]
    epsilons = [float(e) for e in epsilons]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(sweep_row, mus, [epsilons] * len(mus), [config] * len(mus)))
    else:
        rows = [sweep_row(mu, epsilons, config) for mu in mus]
    return [r for row in rows for r in row]


def render_sweep(records, fmt_name: str) -> str:
    if fmt_name == "json":
        data = [{k: _round9(v) for k, v in asdict(r).items()} for r in records]
        return json.dumps(data, indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_FIELDS)
    for r in records:
        writer.writerow([fmt(getattr(r, f)) for f in SWEEP_FIELDS])
    return buf.getvalue()


def atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".sweep-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_sweep(args) -> int:
    mus = parse_grid(args.mu_grid)
    epsilons = parse_grid(args.epsilon_grid)
    records = run_sweep(mus, epsilons, _config(args), args.jobs)
    text = render_sweep(records, args.format or "csv")
    if args.out in (None, "-"):
        sys.stdout.write(text)
        return 0
    try:
        atomic_write(args.out, text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


def cmd_verify(args) -> int:
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    results = run_suite(args.suite, args.samples, args.seed, _config(args))
    if args.format == "json":
        print(json.dumps([
            {"property": r.name, "samples": r.samples, "max_violation": r.max_violation,
             "tolerance": r.tolerance, "passed": r.passed, "worst": r.worst}
            for r in results
        ]))
    else:
        for r in results:
            print(r.line())
    return 0 if all(r.passed for r in results) else EXIT_PROPERTY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weakdiscord", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def optimizer_flags(p):
        p.add_argument("--theta-points", type=int, default=OptimizerConfig.theta_points)
        p.add_argument("--phi-points", type=int, default=OptimizerConfig.phi_points)

    p = sub.add_parser("quantify", help="evaluate one quantifier on one state")
    p.add_argument("--state", required=True, help="state spec, e.g. werner:mu=0.5")
    p.add_argument("--quantifier", required=True, choices=QUANTIFIERS)
    p.add_argument("--epsilon", type=float, help="B-side monitoring strength")
    p.add_argument("--epsilon-a", type=float, help="A-side monitoring strength (sywqd)")
    p.add_argument("--x", type=float, help="dichotomic weak-measurement strength (sqd)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--log-base", choices=("e", "2"), default="e", help="display unit only")
    optimizer_flags(p)
    p.set_defaults(func=cmd_quantify)

    p = sub.add_parser("sweep", help="weak discord of the Werner-singlet family over a (mu, eps) grid")
    p.add_argument("--mu-grid", default="0:1:11")
    p.add_argument("--epsilon-grid", default="0:1:11")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="output path (stdout if omitted)")
    p.add_argument("--jobs", type=int, default=1)
    optimizer_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run seeded property suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--format", choices=("text", "json"), default="text")
    optimizer_flags(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, StateSpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIM
    except (ValidationError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

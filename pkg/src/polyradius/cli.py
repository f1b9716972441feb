"""Command-line front end.

Subcommands: ``spectrum``, ``radius``, ``phase-diagram``, ``oracle`` and
``validate``.  Tabular output is CSV with the fixed header ``CSV_COLUMNS``;
single-point queries may ask for JSON.  Exit codes: 0 success, 1 usage error,
2 validation failure, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import Iterable, List, Optional

import numpy as np

from .errors import InvalidParams, NumericalFailure, PolymerError
from .oracles import McConfig, PdeConfig, mc_radius, pde_radius
from .radius import RadiusEstimate, criticality_product, phase_scan, radius
from .spectral import BETA_CR, EPSILON, ground_state
from .validation import Context, run_all

CSV_COLUMNS = ("beta", "t", "product", "radius", "regime", "method", "stderr", "imag_residual")
SPECTRUM_KEYS = ("beta", "beta_cr", "delta", "gamma", "lambda0", "d_lambda_deriv")

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_NUMERICAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt(x: float) -> str:
    """17 significant digits: parses back to the same double."""
    return format(float(x), ".17g")


def estimate_record(est: RadiusEstimate) -> dict:
    return {
        "beta": est.beta,
        "t": est.t,
        "product": criticality_product(est.beta, est.t),
        "radius": est.radius,
        "regime": est.regime.value,
        "method": est.method.value,
        "stderr": est.stderr,
        "imag_residual": est.imag_residual,
    }


def estimate_row(est: RadiusEstimate) -> dict:
    return {k: fmt(v) if isinstance(v, float) else v for k, v in estimate_record(est).items()}


def write_csv(rows: Iterable[dict], stream) -> None:
    writer = csv.DictWriter(stream, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)


def read_csv(stream) -> List[dict]:
    reader = csv.DictReader(stream)
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    return list(reader)


def _check_window(betas, allow_far: bool):
    if allow_far:
        return
    for b in betas:
        # beta = 0 is the free-motion reference
        if b != 0.0 and abs(b - BETA_CR) > EPSILON:
            raise UsageError(f"beta = {b} lies outside |beta - beta_cr| <= {EPSILON}; "
                             "pass --allow-far to override")


def _emit(text: str, output: Optional[str]):
    if output:
        with open(output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _estimates(beta: float, t: float, method: str, args) -> List[RadiusEstimate]:
    out = []
    if method in ("laplace", "all"):
        out.append(radius(beta, t, n=args.nodes))
    if method in ("pde", "all"):
        out.append(pde_radius(beta, t, PdeConfig()))
    if method in ("mc", "all"):
        out.append(mc_radius(beta, t, McConfig(n_paths=args.n_paths, dt=args.dt, seed=args.seed)))
    return out


def _render(estimates: List[RadiusEstimate], fmt_name: str) -> str:
    if fmt_name == "json":
        records = [estimate_record(e) for e in estimates]
        payload = records[0] if len(records) == 1 else records
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    write_csv([estimate_row(e) for e in estimates], buf)
    return buf.getvalue()


def cmd_spectrum(args) -> int:
    _check_window([args.beta], args.allow_far)
    gs = ground_state(args.beta, epsilon=math.inf if args.allow_far else EPSILON)
    record = dict(zip(SPECTRUM_KEYS, (args.beta, BETA_CR, args.beta - BETA_CR, gs.gamma,
                                      gs.lambda0, gs.d_lambda_deriv)))
    _emit(json.dumps(record, indent=2) + "\n", args.output)
    return EXIT_OK


def cmd_radius(args) -> int:
    _check_window([args.beta], args.allow_far)
    _emit(_render(_estimates(args.beta, args.t, args.method, args), args.format), args.output)
    return EXIT_OK


def cmd_oracle(args) -> int:
    args.method = "all"
    return cmd_radius(args)


def cmd_phase_diagram(args) -> int:
    lo, hi, n = args.beta_range
    betas = np.linspace(lo, hi, int(n))
    tlo, thi, tn = args.t_range
    if tlo <= 0.0:
        raise UsageError("t-range must be positive")
    ts = np.geomspace(tlo, thi, int(tn)) if args.log_t else np.linspace(tlo, thi, int(tn))
    _check_window(betas, args.allow_far)
    scan = phase_scan(betas, ts, n=args.nodes)
    _emit(_render(scan.estimates, "csv"), args.output)
    for regime, (cmin, cmax) in sorted(scan.scaling_constants.items()):
        print(f"# {regime}: c- = {cmin:.6g}, c+ = {cmax:.6g}", file=sys.stderr)
    return EXIT_OK


def cmd_validate(args) -> int:
    ctx = Context(mc_paths=args.mc_paths, mc_dt=args.mc_dt)
    skip = (9,) if args.skip_mc else ()
    results = run_all(ctx, skip=skip)
    lines = "".join(r.line() + "\n" for r in results)
    _emit(lines, args.output)
    if args.output:
        sys.stdout.write(lines)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    seed_default = int(os.environ.get("SEED", "0"))
    parser = _Parser(prog="polyradius", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(p, single=True):
        if single:
            p.add_argument("--beta", type=float, required=True)
        p.add_argument("--output", "-o")
        p.add_argument("--allow-far", action="store_true",
                       help="permit couplings outside the near-critical window")

    p = sub.add_parser("spectrum", help="ground-state eigenvalue and gamma (JSON)")
    common(p)
    p.set_defaults(func=cmd_spectrum)

    for name, func in (("radius", cmd_radius), ("oracle", cmd_oracle)):
        p = sub.add_parser(name, help="polymer radius at one (beta, t)")
        common(p)
        p.add_argument("--t", type=float, required=True)
        if name == "radius":
            p.add_argument("--method", choices=("laplace", "mc", "pde", "all"), default="laplace")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--seed", type=int, default=seed_default)
        p.add_argument("--n-paths", type=int, default=200_000)
        p.add_argument("--dt", type=float, default=1e-3)
        p.add_argument("--nodes", type=int, default=128, help="contour nodes per ray")
        p.set_defaults(func=func)

    p = sub.add_parser("phase-diagram", help="radius on a (beta, t) grid (CSV)")
    common(p, single=False)
    p.add_argument("--beta-range", type=float, nargs=3, metavar=("LO", "HI", "N"), required=True)
    p.add_argument("--t-range", type=float, nargs=3, metavar=("LO", "HI", "N"), required=True)
    p.add_argument("--log-t", action="store_true", help="geometric spacing in t")
    p.add_argument("--nodes", type=int, default=128)
    p.set_defaults(func=cmd_phase_diagram)

    p = sub.add_parser("validate", help="run the acceptance checks")
    p.add_argument("--output", "-o")
    p.add_argument("--skip-mc", action="store_true", help="skip the Monte Carlo triangle check")
    p.add_argument("--mc-paths", type=int, default=200_000)
    p.add_argument("--mc-dt", type=float, default=2e-3)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (UsageError, InvalidParams) as exc:
        print(json.dumps({"error": "usage", "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE
    except (NumericalFailure, PolymerError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())

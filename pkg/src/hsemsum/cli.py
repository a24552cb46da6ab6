"""Command-line front end.

Subcommands: ``sum`` (single-point evaluation with oracle comparison),
``convergence`` (the error-scaling sweep, CSV output plus a slope table),
``epstein`` (continued lattice-sum values), ``bernoulli`` (periodic Bernoulli
function sampled over the elementary cell). Exit codes: 2 usage, 3 domain
errors, 4 I/O errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .epstein import c_n, epstein_z0_square
from .errors import HsemError
from .hsem import (GaussianField, apply_operator, build_operator,
                   evaluate_sum, hadamard_gaussian)
from .oracle import bernoulli_eval, brute_force_sum

_CSV_HEADER = "nu,lambda,ell,x1,x2,hsem,oracle,abs_error"
_FLOOR_ERROR = 1e-13
_SWEEP_ORACLE_TOL = 1e-14


@dataclass(frozen=True)
class SweepRecord:
    """One row of the convergence experiment."""

    nu: float
    lam: float
    ell: int
    x1: int
    x2: int
    hsem_value: float
    oracle_value: float
    abs_error: float


def run_sweep(nu: float, lambdas: Sequence[float], ell_max: int,
              grid_extent: int,
              oracle_tol: float = _SWEEP_ORACLE_TOL
              ) -> Tuple[List[SweepRecord], Dict[int, Optional[float]]]:
    """Run the error-scaling experiment over the grid |x|_inf <= grid_extent.

    Returns the full record list (sorted by ell, lambda, x) and the fitted
    slope of log10(max-grid error) against log10(lambda) per ell; the slope
    is None when fewer than two lambdas are usable or the error sits at the
    double-precision floor.
    """
    grid = [(i, j) for i in range(-grid_extent, grid_extent + 1)
            for j in range(-grid_extent, grid_extent + 1)]
    ops = {ell: build_operator(ell, nu, 1.0) for ell in range(ell_max + 1)}
    records: List[SweepRecord] = []
    max_err: Dict[Tuple[int, float], float] = {}
    for lam in lambdas:
        fld = GaussianField(lam)
        for (i, j) in grid:
            x = (float(i), float(j))
            oracle = brute_force_sum(nu, fld, x, oracle_tol).value
            for ell in range(ell_max + 1):
                hsem = evaluate_sum(ops[ell], fld, x)
                err = abs(hsem - oracle)
                records.append(SweepRecord(nu, lam, ell, i, j, hsem, oracle, err))
                key = (ell, lam)
                if err > max_err.get(key, 0.0):
                    max_err[key] = err
    records.sort(key=lambda r: (r.ell, r.lam, r.x1, r.x2))
    slopes: Dict[int, Optional[float]] = {}
    for ell in range(ell_max + 1):
        xs, ys = [], []
        for lam in lambdas:
            e = max_err[(ell, lam)]
            if e > 0.0:
                xs.append(math.log10(lam))
                ys.append(math.log10(e))
        peak = max(max_err[(ell, lam)] for lam in lambdas)
        if len(xs) < 2 or peak < _FLOOR_ERROR:
            slopes[ell] = None
        else:
            slopes[ell] = float(np.polyfit(xs, ys, 1)[0])
    return records, slopes


def sweep_max_errors(records: Sequence[SweepRecord]
                     ) -> Dict[Tuple[int, float], float]:
    """Max-over-grid error per (ell, lambda) pair."""
    out: Dict[Tuple[int, float], float] = {}
    for r in records:
        key = (r.ell, r.lam)
        if r.abs_error > out.get(key, 0.0):
            out[key] = r.abs_error
    return out


def _write_sweep_csv(records: Sequence[SweepRecord], path: str) -> None:
    lines = [_CSV_HEADER]
    for r in records:
        lines.append(f"{r.nu!r},{r.lam!r},{r.ell},{r.x1},{r.x2},"
                     f"{r.hsem_value!r},{r.oracle_value!r},{r.abs_error!r}")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# Subcommands

def _parse_point(text: str) -> Tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("point must look like 'i,j'")
    return float(parts[0]), float(parts[1])


def _cmd_sum(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    fld = GaussianField(args.lam)
    op = build_operator(args.ell, args.nu, args.h)
    operator_term = apply_operator(op, fld, args.x)
    hadamard_term = hadamard_gaussian(args.nu, args.lam, args.x) / (args.h ** 2)
    hsem_value = evaluate_sum(op, fld, args.x)
    oracle = brute_force_sum(args.nu, fld, args.x, args.tol)
    payload = {
        "hsem_value": hsem_value,
        "oracle_value": oracle.value,
        "abs_error": abs(hsem_value - oracle.value),
        "operator_term": operator_term,
        "hadamard_term": hadamard_term,
        "error_bound": oracle.tail_bound,
        "elapsed_s": time.perf_counter() - t0,
    }
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        keys = [k for k in payload if k != "elapsed_s"]
        print(",".join(keys))
        print(",".join(repr(payload[k]) for k in keys))
    return 0


def _cmd_convergence(args: argparse.Namespace) -> int:
    records, slopes = run_sweep(args.nu, args.lambdas, args.ell_max,
                                args.grid_extent)
    _write_sweep_csv(records, args.out)
    max_err = sweep_max_errors(records)
    print("ell,slope,target,flag")
    for ell in range(args.ell_max + 1):
        target = -2.0 * (ell + 1)
        peak = max(max_err[(ell, lam)] for lam in args.lambdas)
        flag = "floor" if peak < _FLOOR_ERROR else ""
        slope = slopes[ell]
        slope_txt = "" if slope is None else f"{slope:.3f}"
        print(f"{ell},{slope_txt},{target:.1f},{flag}")
    return 0


def _cmd_epstein(args: argparse.Namespace) -> int:
    try:
        z0 = epstein_z0_square(args.nu)
    except HsemError as exc:
        raise HsemError(f"{exc} (simple pole at nu = 2, residue 2*pi)") from exc
    payload = {
        "nu": args.nu,
        "z0": z0.value,
        "z0_error_bound": z0.abs_error_bound,
    }
    moments = []
    for n in range(1, args.n + 1):
        cn = c_n(n, args.nu)
        moments.append({"n": n, "value": cn.value,
                        "error_bound": cn.abs_error_bound})
    if moments:
        payload["c"] = moments
        payload["c1_symmetry_residual"] = moments[0]["value"] - z0.value / 2.0
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("n,value,error_bound")
        print(f"0,{z0.value!r},{z0.abs_error_bound!r}")
        for m in moments:
            print(f"{m['n']},{m['value']!r},{m['error_bound']!r}")
    return 0


def _cmd_bernoulli(args: argparse.Namespace) -> int:
    if args.ell < 1:
        print("error: --ell must be >= 1 (the order-0 Fourier series is only "
              "conditionally convergent)", file=sys.stderr)
        return 2
    n = args.resolution
    coords = [-0.5 + i / (n - 1) if n > 1 else 0.0 for i in range(n)]
    lines = ["y1,y2,value"]
    for y1 in coords:
        for y2 in coords:
            val = bernoulli_eval(args.ell, (y1, y2)).value
            lines.append(f"{y1!r},{y2!r},{val!r}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# Parser and entry point

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hsemsum",
        description="O(1) evaluation of singular long-range lattice sums")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sum = sub.add_parser("sum", help="evaluate one singular lattice sum")
    p_sum.add_argument("--nu", type=float, default=2.001)
    p_sum.add_argument("--lambda", dest="lam", type=float, default=4.0)
    p_sum.add_argument("--ell", type=int, default=2)
    p_sum.add_argument("--x", type=_parse_point, default=(0.0, 0.0))
    p_sum.add_argument("--h", type=float, default=1.0)
    p_sum.add_argument("--tol", type=float, default=1e-10)
    p_sum.add_argument("--format", choices=("json", "csv"), default="json")
    p_sum.set_defaults(func=_cmd_sum)

    p_conv = sub.add_parser("convergence", help="run the error-scaling sweep")
    p_conv.add_argument("--nu", type=float, default=2.001)
    p_conv.add_argument("--lambdas", type=lambda s: [float(v) for v in s.split(",")],
                        default=[2.0, 4.0, 6.0, 8.0, 10.0])
    p_conv.add_argument("--ell-max", type=int, default=3)
    p_conv.add_argument("--grid-extent", type=int, default=8)
    p_conv.add_argument("--out", default="convergence.csv")
    p_conv.set_defaults(func=_cmd_convergence)

    p_eps = sub.add_parser("epstein", help="continued lattice-sum values")
    p_eps.add_argument("--nu", type=float, required=True)
    p_eps.add_argument("--n", type=int, default=1)
    p_eps.add_argument("--format", choices=("json", "csv"), default="json")
    p_eps.set_defaults(func=_cmd_epstein)

    p_ber = sub.add_parser("bernoulli",
                           help="periodic Bernoulli grid on the unit cell")
    p_ber.add_argument("--ell", type=int, required=True)
    p_ber.add_argument("--resolution", type=int, default=33)
    p_ber.add_argument("--out", default=None)
    p_ber.set_defaults(func=_cmd_bernoulli)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except HsemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: report emission and the exit-code contract.

Exit codes: 0 success, 1 verified gap violation (the scientific payload —
re-checked with every density evaluator before being reported), 2 any error.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .boxspline import density_profile, phi
from .errors import BoxgapError
from .gap import (
    GapReport,
    ThresholdReport,
    _expectation,
    confirm_counterexample,
    gap as gap_report,
    minimize_gap,
    scan_random,
    threshold_probe,
)
from .io import dumps_csv, dumps_json, format_float, write_text
from .rademacher import f_function
from .saddlepoint import convergence_report
from .weights import FamilySpec, WeightVector, center, generate, make_unit

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_ERROR = 2


# ---------------------------------------------------------------------------
# argument parsing helpers


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from exc


def _parse_int_range(text: str) -> list[int]:
    """'1..8' -> [1..8]; '8,16,32' -> [8, 16, 32]; '5' -> [5]."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _add_weight_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--weights", type=_parse_floats, metavar="a,b,c",
                   help="explicit weights (sorted and unit-normalized)")
    g.add_argument("--equal", type=int, metavar="N", help="equal weights")
    g.add_argument("--geometric", metavar="N,Q",
                   help="geometric weights q^0..q^(n-1)")
    g.add_argument("--random", metavar="N,C0,SEED",
                   help="seeded random weights with ratio cap c0")


def _weights_from(args) -> WeightVector:
    if args.weights is not None:
        return make_unit(args.weights)
    if args.equal is not None:
        return generate(FamilySpec("equal", args.equal))
    if args.geometric is not None:
        n, q = args.geometric.split(",", 1)
        return generate(FamilySpec("geometric", int(n), q=float(q)))
    n, c0, seed = args.random.split(",", 2)
    return generate(FamilySpec("random", int(n), c0=float(c0), seed=int(seed)))


def _emit(args, json_text: str, csv_text: str | None = None) -> None:
    if getattr(args, "format", "json") == "csv":
        if csv_text is None:
            raise BoxgapError("this command has no CSV form; use --format json")
        write_text(args.out, csv_text)
    else:
        write_text(args.out, json_text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_eval(args) -> int:
    A = _weights_from(args)
    if args.grid is not None:
        start, stop, step = (float(t) for t in args.grid.split(":"))
        grid = np.arange(start, stop + step / 2.0, step)
    else:
        at = center(A) if args.at == "center" else float(args.at)
        grid = np.array([at])
    prof = density_profile(A, grid, method=args.method)
    _emit(args, dumps_json(prof),
          dumps_csv(("x", "value", "method"), prof.to_csv_rows()))
    return EXIT_OK


def cmd_phi(args) -> int:
    A = _weights_from(args)
    r = 0.0 if args.r == "center" else float(args.r)
    value = phi(A, r, method=args.method)
    _emit(args, dumps_json({"A": A.to_json(), "r": r, "phi": value,
                            "method": args.method}))
    return EXIT_OK


def cmd_expect(args) -> int:
    A = _weights_from(args)
    summary = _expectation(A, args.method, args.samples, args.seed)
    _emit(args, dumps_json(summary))
    return EXIT_OK


def cmd_fbound(args) -> int:
    value, err = f_function(args.s, tol=args.tol)
    _emit(args, dumps_json({"s": args.s, "f": value, "quad_error": err}))
    return EXIT_OK


def cmd_gap(args) -> int:
    A = _weights_from(args)
    report = gap_report(A, phi_method=args.method, seed=args.seed)
    if report.gap >= -max(args.tol, report.tolerance):
        _emit(args, dumps_json(report))
        return EXIT_OK
    confirmed, reports = confirm_counterexample(A, args.tol)
    record = {
        "counterexample_candidate": True,
        "confirmed": confirmed,
        "reports": [r.to_json_dict() for r in reports],
    }
    _emit(args, dumps_json(record))
    return EXIT_VIOLATION if confirmed else EXIT_OK


def cmd_scan(args) -> int:
    rows: list[tuple] = []
    summary = scan_random(args.n, args.c0, args.trials, args.seed,
                                 collect=rows.append)
    csv_text = dumps_csv(("trial", "gap", "ratio"), rows)
    _emit(args, dumps_json(summary), csv_text)
    if summary.min_report.gap < -max(args.tol, summary.min_report.tolerance):
        confirmed, _ = confirm_counterexample(summary.min_report.A, args.tol)
        if confirmed:
            return EXIT_VIOLATION
    return EXIT_OK


def cmd_minimize(args) -> int:
    start = _weights_from(args)
    report, exhausted = minimize_gap(start.n, args.c0, start,
                                            budget=args.budget)
    _emit(args, dumps_json({"report": report.to_json_dict(),
                            "budget_exhausted": exhausted}))
    if report.gap < -max(args.tol, report.tolerance):
        confirmed, _ = confirm_counterexample(report.A, args.tol)
        if confirmed:
            return EXIT_VIOLATION
    return EXIT_OK


def cmd_probe(args) -> int:
    ns = _parse_int_range(args.n)

    def one(n: int):
        return threshold_probe(args.c0, args.family, [n],
                               trials_per_n=args.trials, seed=args.seed,
                               tol=args.tol).rows[0]

    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            rows = list(pool.map(one, ns))  # ordered merge: map preserves order
    else:
        rows = [one(n) for n in ns]
    n0 = None
    for row in reversed(rows):
        if row.min_slack >= -row.slack_tol:
            n0 = row.n
        else:
            break
    report = ThresholdReport(c0=args.c0, family_kind=args.family,
                                    n_range=(ns[0], ns[-1]), rows=rows,
                                    empirical_N0=n0)
    csv_text = dumps_csv(
        ("n", "min_gap", "min_slack", "slack_tol"),
        ((r.n, r.min_gap, r.min_slack, r.slack_tol) for r in rows))
    _emit(args, dumps_json(report), csv_text)
    return EXIT_OK


def cmd_converge(args) -> int:
    ns = _parse_int_range(args.n)
    if args.family == "equal":
        specs = [FamilySpec("equal", n) for n in ns]
    elif args.family == "geometric":
        specs = [FamilySpec("geometric", n, q=args.q) for n in ns]
    else:
        raise BoxgapError(f"converge supports equal/geometric, not {args.family!r}")
    reports = convergence_report(specs, points=args.points)
    rows = [(r.n, r.sup_distance, r.l2_distance, "/".join(r.method_pair))
            for r in reports]
    payload = [{"n": r.n, "sup_distance": r.sup_distance,
                "l2_distance": r.l2_distance,
                "method_pair": list(r.method_pair), "grid": r.grid}
               for r in reports]
    _emit(args, dumps_json(payload),
          dumps_csv(("n", "sup_distance", "l2_distance", "pair"), rows))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="boxgap",
        description="Box-spline densities and the Mahler-gap inequality "
                    "phi_A(0) E|sum a_k e_k| >= 1.")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, method_choices=None):
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        if method_choices:
            p.add_argument("--method", choices=method_choices, default="auto")

    p = sub.add_parser("eval", help="tabulate B(.|A) on a grid or at a point")
    _add_weight_flags(p)
    p.add_argument("--grid", metavar="START:STOP:STEP")
    p.add_argument("--at", default="center",
                   help="single abscissa, or 'center' for sum(a)/2")
    common(p, ("auto", "truncated_power", "convolution", "fourier"))
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("phi", help="section function phi_A(r) = B(r + center)")
    _add_weight_flags(p)
    p.add_argument("--r", default="0", help="offset from the center")
    common(p, ("auto", "truncated_power", "convolution", "fourier"))
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("expect", help="Rademacher expectation E|sum a_k e_k|")
    _add_weight_flags(p)
    p.add_argument("--samples", type=int, default=4 * 10**5)
    p.add_argument("--seed", type=int, default=0)
    common(p, ("auto", "exact", "monte_carlo"))
    p.set_defaults(func=cmd_expect)

    p = sub.add_parser("fbound", help="the Khinchine-type bound F(s)")
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-4)
    common(p)
    p.set_defaults(func=cmd_fbound)

    p = sub.add_parser("gap", help="verify phi_A(0) E - 1 >= 0 for one A")
    _add_weight_flags(p)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--seed", type=int, default=0)
    common(p, ("auto", "truncated_power", "convolution", "fourier"))
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("scan", help="minimum gap over seeded random vectors")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c0", type=float, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("minimize", help="local gap descent from a start vector")
    _add_weight_flags(p)
    p.add_argument("--c0", type=float, required=True)
    p.add_argument("--budget", type=int, default=2000)
    p.add_argument("--tol", type=float, default=1e-9)
    common(p)
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("probe", help="empirical N0(c0) threshold report")
    p.add_argument("--c0", type=float, required=True)
    p.add_argument("--family", choices=("equal", "geometric", "random"),
                   default="equal")
    p.add_argument("--n", required=True, metavar="LO..HI|LIST")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--threads", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("converge", help="sup/L2 distance to the Gaussian limit")
    p.add_argument("--family", default="equal")
    p.add_argument("--n", required=True, metavar="LIST")
    p.add_argument("--q", type=float, default=0.9)
    p.add_argument("--points", type=int, default=121)
    common(p)
    p.set_defaults(func=cmd_converge)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BoxgapError as exc:
        print(f"boxgap: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, OSError) as exc:
        print(f"boxgap: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

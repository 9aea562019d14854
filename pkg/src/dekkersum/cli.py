"""Command-line harness.

Subcommands: accumulate, validate, pedagogy, threebody, numberline,
check-theorems.  Exit codes: 0 ok, 1 bound/theorem violation,
2 inapplicable bound or invalid configuration, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import experiment, numberline, pedagogy, theorems, threebody
from .bounds import BoundNotApplicableError
from .dekker import SystemParams, TIE_AWAY, TIE_EVEN, TIE_UP
from .summation import ALGORITHMS_BY_NAME, Algorithm

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_CONFIG = 2
EXIT_IO = 3

_PRECISIONS = {"f32": "binary32", "f64": "binary64"}


def _parse_algos(text: str) -> list[Algorithm]:
    names = [s.strip() for s in text.split(",") if s.strip()]
    unknown = [s for s in names if s not in ALGORITHMS_BY_NAME]
    if unknown:
        raise argparse.ArgumentTypeError(
            f"unknown algorithm(s) {unknown}; choose from {sorted(ALGORITHMS_BY_NAME)}"
        )
    return [ALGORITHMS_BY_NAME[s] for s in names]


def _parse_ints(text: str) -> list[int]:
    try:
        return [int(s, 0) for s in text.split(",") if s.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--precision", choices=sorted(_PRECISIONS), default="f64")
    sub.add_argument("--n", type=_parse_ints, default=[2**10],
                     help="addend count(s), comma separated")
    sub.add_argument("--seed", type=_parse_ints, default=[0],
                     help="seed(s), comma separated")
    sub.add_argument("--algo", type=_parse_algos,
                     default=list(Algorithm),
                     help="comma-separated algorithm names "
                          f"({','.join(sorted(ALGORITHMS_BY_NAME))})")
    sub.add_argument("--out", default=None, help="output directory (default: stdout)")
    sub.add_argument("--format", choices=("csv", "tsv"), default="csv")


def _open_out(args, filename: str):
    if args.out is None:
        return sys.stdout, False
    os.makedirs(args.out, exist_ok=True)
    return open(os.path.join(args.out, filename), "w"), True


def _emit_records(args, records) -> list:
    delim = "," if args.format == "csv" else "\t"
    out, close = _open_out(args, f"accumulate.{args.format}")
    violations = []
    try:
        out.write(experiment.CSV_HEADER.replace(",", delim) + "\n")
        for rec in records:
            out.write(rec.csv_row().replace(",", delim) + "\n")
            if rec.violated:
                violations.append(rec)
    finally:
        if close:
            out.close()
    return violations


def _cmd_accumulate(args) -> int:
    records = experiment.run_grid(
        args.algo, args.n, args.seed, [_PRECISIONS[args.precision]]
    )
    _emit_records(args, records)
    return EXIT_OK


def _cmd_validate(args) -> int:
    fault = None
    if args.inject_step is not None:
        fault = experiment.FaultInjection(step=args.inject_step, bit=args.inject_bit)
    records = experiment.run_grid(
        args.algo, args.n, args.seed, [_PRECISIONS[args.precision]], fault=fault
    )
    violations = _emit_records(args, records)
    if violations:
        for rec in violations:
            print(
                f"BOUND VIOLATION: {rec.algorithm.value} n={rec.n} seed={rec.seed} "
                f"{rec.precision}: observed pair error "
                f"{float(rec.observed_rel_err_pair):.6E} exceeds bound "
                f"{float(rec.derived_bound):.6E}",
                file=sys.stderr,
            )
        return EXIT_VIOLATION
    print("all bounds satisfied", file=sys.stderr)
    return EXIT_OK


def _cmd_pedagogy(args) -> int:
    print(pedagogy.render_all())
    return EXIT_OK


def _cmd_threebody(args) -> int:
    spec = threebody.SimSpec(
        precision=_PRECISIONS[args.precision],
        h=args.h,
        periods=args.periods,
        compensation=ALGORITHMS_BY_NAME[args.compensation],
    )
    traj = threebody.run_simulation(spec)
    ref = threebody.reference_trajectory(spec)
    dev = threebody.max_position_deviation(traj, ref)
    outdir = args.out or "."
    os.makedirs(outdir, exist_ok=True)
    threebody.write_csv(
        os.path.join(outdir, "threebody.csv"), traj, stride=args.stride
    )
    seg_len = max(1, (traj.shape[0] - 1) // max(args.segments, 1))
    for seg in range(max(args.segments, 1)):
        lo = seg * seg_len
        hi = traj.shape[0] if seg == args.segments - 1 else (seg + 1) * seg_len + 1
        threebody.write_orbit_svg(
            os.path.join(outdir, f"orbit_{seg:03d}.svg"),
            traj[lo:hi],
            title=f"{args.compensation} {args.precision} h={args.h} segment {seg}",
        )
    print(f"max deviation from binary64 double-compensated reference: {dev:.6E}")
    return EXIT_OK


def _cmd_numberline(args) -> int:
    params = SystemParams(beta=args.beta, t=args.t, emin=args.emin, emax=args.emax)
    delim = "," if args.format == "csv" else "\t"
    out, close = _open_out(args, f"numberline.{args.format}")
    try:
        out.write(delim.join(numberline.CSV_HEADER.split(",")) + "\n")
        for m, e, value, kind in numberline.emit_rows(params, args.view):
            out.write(delim.join([str(m), str(e), f"{float(value):.9G}", kind]) + "\n")
    finally:
        if close:
            out.close()
    return EXIT_OK


def _cmd_check_theorems(args) -> int:
    grid = None
    if args.t is not None:
        grid = [
            SystemParams(2, t, emin, emax)
            for t in args.t
            for emin in range(args.emin_lo, args.emin_hi + 1)
            for emax in range(args.emax_lo, args.emax_hi + 1)
        ]
    results = theorems.run_checks(grid=grid, tie=args.tie)
    print(theorems.render_report(results))
    return EXIT_VIOLATION if theorems.any_failed(results) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dekkersum",
        description="Compensated summation toolkit: simulated floating point, "
                    "error-free transformations, and experiment harness.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    acc = subs.add_parser("accumulate", help="random accumulation experiment table")
    _add_common(acc)
    acc.set_defaults(fn=_cmd_accumulate)

    val = subs.add_parser("validate", help="accumulate and fail on bound violations")
    _add_common(val)
    val.add_argument("--inject-step", type=int, default=None,
                     help="test hook: flip a bit of the running sum after this step")
    val.add_argument("--inject-bit", type=int, default=30,
                     help="test hook: which bit to flip")
    val.set_defaults(fn=_cmd_validate)

    ped = subs.add_parser("pedagogy", help="step-by-step trace tables on a tiny system")
    ped.set_defaults(fn=_cmd_pedagogy)

    tb = subs.add_parser("threebody", help="figure-eight three-body orbit simulation")
    tb.add_argument("--precision", choices=sorted(_PRECISIONS), default="f32")
    tb.add_argument("--h", type=float, default=2.0**-11, help="time step")
    tb.add_argument("--periods", type=int, default=1)
    tb.add_argument("--segments", type=int, default=1)
    tb.add_argument("--compensation", choices=sorted(ALGORITHMS_BY_NAME),
                    default="double6op")
    tb.add_argument("--stride", type=int, default=32, help="CSV sampling stride")
    tb.add_argument("--out", default=None)
    tb.set_defaults(fn=_cmd_threebody)

    nl = subs.add_parser("numberline", help="number distribution data for tiny systems")
    nl.add_argument("--view", choices=numberline.VIEWS, default="all")
    nl.add_argument("--beta", type=int, default=2)
    nl.add_argument("--t", type=int, default=3)
    nl.add_argument("--emin", type=int, default=-3)
    nl.add_argument("--emax", type=int, default=0)
    nl.add_argument("--out", default=None)
    nl.add_argument("--format", choices=("csv", "tsv"), default="csv")
    nl.set_defaults(fn=_cmd_numberline)

    chk = subs.add_parser("check-theorems", help="exhaustive lemma/theorem suite")
    chk.add_argument("--tie", choices=(TIE_EVEN, TIE_AWAY, TIE_UP), default=TIE_EVEN,
                     help="tie-breaking rule (non-default rules are mutation hooks)")
    chk.add_argument("--t", type=_parse_ints, default=None,
                     help="mantissa digit counts, comma separated (default 1,2,3)")
    chk.add_argument("--emin-lo", type=int, default=-3)
    chk.add_argument("--emin-hi", type=int, default=0)
    chk.add_argument("--emax-lo", type=int, default=0)
    chk.add_argument("--emax-hi", type=int, default=3)
    chk.set_defaults(fn=_cmd_check_theorems)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except BoundNotApplicableError as exc:
        print(f"bound not applicable: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, threebody.BlowUpError) as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

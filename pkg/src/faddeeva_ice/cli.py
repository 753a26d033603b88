"""Command line front end: ``faddeeva-ice {eval,errmap,bench,coeffs}``."""

from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from .bench import format_report, run_benchmark
from .core import EvalOptions, IncompleteCosineW, LowerHalfPolicy, build_coefficients
from .errmap import HEADLINE_GRID_TEXT, GridSpec, compute_error_map, write_error_map
from .errors import FaddeevaError, ParameterError
from .oracle import w_ref
from .sampling import ExpansionParams
from .weideman import WeidemanW

log = logging.getLogger("faddeeva_ice")


class OracleEngine:
    name = "oracle"

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.array([w_ref(v).value for v in z.reshape(-1)], dtype=complex)
        return out.reshape(z.shape) if z.ndim else out[0]


def _params(args) -> ExpansionParams:
    return ExpansionParams(h=args.h, N=args.N, M=args.M, sigma_shift=args.sigma)


def make_engine(args):
    if args.engine == "ice":
        policy = LowerHalfPolicy.REFLECT if args.lower_half == "reflect" else LowerHalfPolicy.REJECT
        return IncompleteCosineW(_params(args), EvalOptions(lower_half_policy=policy))
    if args.engine == "weideman":
        return WeidemanW(args.weideman_terms)
    return OracleEngine()


def read_points(stream):
    """Parse whitespace separated ``x y`` pairs, one per line; '#' starts a comment."""
    points = []
    for lineno, line in enumerate(stream, 1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        fields = text.split()
        try:
            if len(fields) != 2:
                raise ValueError
            points.append((float(fields[0]), float(fields[1])))
        except ValueError:
            raise ParameterError(f"line {lineno}: expected 'x y', got {line.rstrip()!r}") from None
    return points


def cmd_eval(args, out) -> int:
    if args.points:
        with open(args.points) as fh:
            points = read_points(fh)
    else:
        points = read_points(sys.stdin)
    engine = make_engine(args)
    for x, y in points:
        try:
            v = complex(engine(complex(x, y)))
        except (FaddeevaError, OverflowError) as exc:
            out.write(f"{x!r} {y!r} ERROR {exc}\n")
            continue
        out.write(f"{x!r} {y!r} {v.real:.17g} {v.imag:.17g}\n")
    return 0


def cmd_errmap(args, out) -> int:
    if args.engine == "oracle":
        raise ParameterError("errmap compares an approximation against the oracle; use ice or weideman")
    grid = GridSpec.parse(args.grid)
    engine = make_engine(args)
    emap = compute_error_map(grid, engine)
    paths = write_error_map(emap, args.out, args.threshold_re, args.threshold_im)
    out.write(emap.summary_text(args.threshold_re, args.threshold_im))
    for p in paths:
        log.info("wrote %s", p)
    return 0 if emap.holds(args.threshold_re, args.threshold_im) else 1


def cmd_bench(args, out) -> int:
    if args.engine == "both":
        engines = [IncompleteCosineW(_params(args)), WeidemanW(args.weideman_terms)]
    else:
        engines = [make_engine(args)]
    report = run_benchmark(engines, args.size, args.repetitions, args.seed)
    out.write(format_report(report))
    return 0


def cmd_coeffs(args, out) -> int:
    cs = build_coefficients(_params(args))
    p = cs.params
    out.write(f"# h={p.h!r} N={p.N} M={p.M} sigma={p.sigma_shift!r}\n")
    out.write("# m C_m A_m b_m   (B_m = -i*b_m)\n")
    for m, (c, a, b) in enumerate(zip(cs.c, cs.a, cs.b), 1):
        out.write(f"{m} {c:.17g} {a:.17g} {b:.17g}\n")
    return 0


def _count(text: str) -> int:
    # accepts "1000000" as well as "1e6"
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if v != int(v) or v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return int(v)


def _seed(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--h", type=float, default=0.25, help="sampling step (default 0.25)")
    common.add_argument("--N", type=int, default=23, help="sampling half-count (default 23)")
    common.add_argument("--M", type=int, default=5, help="expansion depth (default 5)")
    common.add_argument("--sigma", type=float, default=2.75, help="shift constant (default 2.75)")
    common.add_argument("--weideman-terms", type=int, default=16, help="terms of the baseline (default 16)")
    common.add_argument("--lower-half", choices=["reject", "reflect"], default="reject")

    parser = argparse.ArgumentParser(prog="faddeeva-ice", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate w at points read from stdin or a file")
    p.add_argument("--engine", choices=["ice", "weideman", "oracle"], default="ice")
    p.add_argument("--points", help="file of 'x y' lines (default: stdin)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("errmap", parents=[common], help="relative error map against the oracle")
    p.add_argument("--engine", choices=["ice", "weideman"], default="ice")
    p.add_argument("--grid", default=HEADLINE_GRID_TEXT)
    p.add_argument("--out", default="errmap", help="output path prefix")
    p.add_argument("--threshold-re", type=float, default=None)
    p.add_argument("--threshold-im", type=float, default=None)
    p.set_defaults(func=cmd_errmap)

    p = sub.add_parser("bench", parents=[common], help="throughput on a large random array")
    p.add_argument("--engine", choices=["ice", "weideman", "both"], default="both")
    p.add_argument("--size", type=_count, default=10**6)
    p.add_argument("--repetitions", type=_count, default=3)
    p.add_argument("--seed", type=_seed, default=0)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("coeffs", parents=[common], help="dump the C_m, A_m, b_m tables")
    p.set_defaults(func=cmd_coeffs)
    return parser


def main(argv=None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    out = out or sys.stdout
    try:
        return args.func(args, out)
    except ParameterError as exc:
        parser.error(str(exc))
    except FaddeevaError as exc:
        print(f"faddeeva-ice: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Exit codes: 0 success, 2 invalid config, 3 domain error, 4 failed verification.
"""
from __future__ import annotations

import argparse
import logging
import sys

from .config import SpecConfig, load_config, save_config
from .evaluate import depth_for_tolerance, error_bound, eval_grid, eval_point
from .exceptions import AlphaFractalError, ExprError, OutOfDomain, SpecError
from .flip import flip_spec
from .integral import integrate_closed_form
from .plot import sample_curves, write_csv, write_svg
from .quadrature import trapezoid_grid
from .verify import BRUTE_FORCE_N, BRUTE_FORCE_TOL, format_table, run_checks

EXIT_OK, EXIT_CONFIG, EXIT_DOMAIN, EXIT_VERIFY = 0, 2, 3, 4

DEFAULT_TOL = 1e-8
DEFAULT_SAMPLES = 2048


def _load(path):
    config = load_config(path)
    return config, config.to_spec()


def cmd_eval(args):
    _, spec = _load(args.config)
    depth = depth_for_tolerance(spec, args.tol)
    report = eval_point(spec, args.x, depth)
    print(f"value       {report.value:.17g}")
    print(f"depth       {report.depth_used}")
    print(f"error_bound {report.error_bound:.3e}")
    return EXIT_OK


def cmd_integrate(args):
    _, spec = _load(args.config)
    res = integrate_closed_form(spec)
    print(f"integral    {res.value:.17g}")
    print(f"lambda      {res.lambda_:.17g}")
    if args.check:
        brute = trapezoid_grid(eval_grid(spec, args.n, args.tol))
        print(f"brute_force {brute:.17g}")
        print(f"difference  {abs(brute - res.value):.3e}")
    return EXIT_OK


def cmd_flip(args):
    config, spec = _load(args.config)
    flipped = flip_spec(spec)
    # a uniform partition stays uniform, so flipping twice restores the file
    save_config(SpecConfig.from_spec(flipped, uniform=config.is_uniform), args.out)
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_plot(args):
    _, spec = _load(args.config)
    xs, fs, fas, _ = sample_curves(spec, args.samples, args.tol)
    out = str(args.out)
    if out.lower().endswith(".csv"):
        write_csv(out, xs, fs, fas)
    elif out.lower().endswith(".svg"):
        series = [("f_alpha", fas)]
        if args.overlay_germ:
            series.insert(0, ("f", fs))
        write_svg(out, xs, series, title=f"f(x) = {spec.f},  b(x) = {spec.b}")
    else:
        print("error: --out must end in .csv or .svg", file=sys.stderr)
        return EXIT_CONFIG
    print(f"wrote {out} ({len(xs)} samples)")
    return EXIT_OK


def cmd_verify(args):
    _, spec = _load(args.config)
    checks = run_checks(spec, tol=args.tol, n=args.n, seed=args.seed)
    print(format_table(checks))
    return EXIT_OK if all(c.passed for c in checks) else EXIT_VERIFY


def build_parser():
    parser = argparse.ArgumentParser(
        prog="alphafractal",
        description="Alpha-fractal interpolation functions: evaluation, integrals, flips.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate f_alpha at one point")
    p.add_argument("config")
    p.add_argument("x", type=float)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("integrate", help="closed-form integral of f_alpha")
    p.add_argument("config")
    p.add_argument("--check", action="store_true", help="also integrate by brute force")
    p.add_argument("--n", type=int, default=BRUTE_FORCE_N)
    p.add_argument("--tol", type=float, default=BRUTE_FORCE_TOL)
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("flip", help="write the config mirrored about the y-axis")
    p.add_argument("config")
    p.add_argument("out")
    p.set_defaults(func=cmd_flip)

    p = sub.add_parser("plot", help="sample f and f_alpha to CSV or SVG")
    p.add_argument("config")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--out", required=True)
    p.add_argument("--overlay-germ", action="store_true")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("verify", help="run every cross-check on a config")
    p.add_argument("config")
    p.add_argument("--n", type=int, default=BRUTE_FORCE_N)
    p.add_argument("--tol", type=float, default=BRUTE_FORCE_TOL)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except OutOfDomain as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (SpecError, ExprError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except AlphaFractalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())

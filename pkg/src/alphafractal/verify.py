"""Cross-checks of one spec: closed forms against brute force, and the identities
every alpha-fractal function must satisfy.

Used by ``alphafractal verify`` and by the acceptance tests.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import AlphaFractalSpec, perturbation_bound, scale_lambda
from .evaluate import depth_for_tolerance, error_bound, eval_grid, eval_points, rb_apply
from .expr import eval_expr
from .flip import flip_spec, flip_integral
from .integral import (
    combine_linear,
    compose_affine,
    integral_limit_check,
    integrate_closed_form,
    sum_zero_shortcut,
)
from .quadrature import trapezoid_grid

__all__ = ["Check", "run_checks", "format_table", "BRUTE_FORCE_N", "BRUTE_FORCE_TOL"]

BRUTE_FORCE_N = 2**14 + 1
BRUTE_FORCE_TOL = 1e-8
BRUTE_FORCE_ATOL = 1e-3
RESIDUAL_ATOL = 1e-4
PERTURBATION_SAMPLES = 10_000
RANDOM_POINTS = 100


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    measured: float
    limit: float


def _le(name, measured, limit):
    return Check(name, bool(measured <= limit), float(measured), float(limit))


def check_fixed_point(spec, grid):
    residual = float(np.max(np.abs(grid.ys - rb_apply(spec, grid).ys)))
    return _le("fixed-point residual", residual, RESIDUAL_ATOL)


def check_interpolation(spec, depth):
    knots = np.asarray(spec.knots)
    vals = eval_points(spec, knots, depth)
    dev = float(np.max(np.abs(vals - eval_expr(spec.f, knots))))
    return _le("interpolation at knots", dev, error_bound(spec, depth))


def check_perturbation(spec, depth, samples=PERTURBATION_SAMPLES):
    xs = np.linspace(*spec.interval, samples)
    dev = float(np.max(np.abs(eval_points(spec, xs, depth) - eval_expr(spec.f, xs))))
    return _le("perturbation bound", dev, perturbation_bound(spec) + error_bound(spec, depth))


def check_brute_force(spec, grid):
    diff = abs(trapezoid_grid(grid) - integrate_closed_form(spec).value)
    return _le("closed form vs brute force", diff, BRUTE_FORCE_ATOL)


def check_cross_evaluator(spec, grid, depth):
    dev = float(np.max(np.abs(eval_points(spec, grid.xs, depth) - grid.ys)))
    return _le("grid vs unrolled evaluator", dev, BRUTE_FORCE_ATOL)


def flip_checks(spec, depth, rng):
    flipped = flip_spec(spec)
    out = [
        _le("flip lambda equality", abs(scale_lambda(flipped) - scale_lambda(spec)), 0.0),
    ]
    twice = flip_spec(flipped)
    same = twice == spec and twice.maps == spec.maps
    out.append(Check("flip involution", same, 0.0 if same else 1.0, 0.0))
    xs = rng.uniform(*spec.interval, RANDOM_POINTS)
    dev = float(np.max(np.abs(eval_points(flipped, -xs, depth) - eval_points(spec, xs, depth))))
    out.append(_le("flip pointwise symmetry", dev,
                   error_bound(spec, depth) + error_bound(flipped, depth)))
    out.append(_le("flip integral equality",
                   abs(flip_integral(spec) - integrate_closed_form(spec).value), 1e-12))
    return out


def algebra_checks(spec, depth, rng, gamma=2.0, delta=-0.5, p=2.0, q=1.0):
    out = []
    xs = rng.uniform(*spec.interval, RANDOM_POINTS)
    v = eval_points(spec, xs, depth)
    eb = error_bound(spec, depth)

    combined = combine_linear(spec, spec, gamma, delta)
    dev = float(np.max(np.abs(eval_points(combined, xs, depth) - (gamma * v + delta * v))))
    out.append(_le("linearity (pointwise)", dev,
                   (abs(gamma) + abs(delta)) * eb + error_bound(combined, depth) + 1e-12))

    composed = compose_affine(spec, p, q)
    dev = float(np.max(np.abs(eval_points(composed, xs, depth) - (p * v + q))))
    out.append(_le("affine composition (pointwise)", dev,
                   abs(p) * eb + error_bound(composed, depth) + 1e-12))

    report = integral_limit_check(spec)
    out.append(Check("integral limit monotone", report.monotone, report.diffs[-1], report.diffs[0]))

    shortcut = sum_zero_shortcut(spec)
    if shortcut is not None:
        out.append(_le("zero-sum shortcut", abs(shortcut - integrate_closed_form(spec).value), 1e-10))
    return out


def run_checks(spec: AlphaFractalSpec, tol: float = BRUTE_FORCE_TOL, n: int = BRUTE_FORCE_N,
               seed: int = 0):
    """All checks for ``spec``; returns a list of :class:`Check`."""
    rng = np.random.default_rng(seed)
    depth = depth_for_tolerance(spec, tol)
    grid = eval_grid(spec, n, tol)
    checks = [
        check_fixed_point(spec, grid),
        check_interpolation(spec, depth),
        check_perturbation(spec, depth),
        check_brute_force(spec, grid),
        check_cross_evaluator(spec, grid, depth),
    ]
    checks += flip_checks(spec, depth, rng)
    checks += algebra_checks(spec, depth, rng)
    return checks


def format_table(checks) -> str:
    width = max(len(c.name) for c in checks)
    lines = [f"{'status':<6}  {'check':<{width}}  {'measured':>10}  {'limit':>10}"]
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        lines.append(f"{status:<6}  {c.name:<{width}}  {c.measured:10.3e}  {c.limit:10.3e}")
    return "\n".join(lines)

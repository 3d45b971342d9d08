"""Closed-form definite integrals of alpha-fractal functions.

Integrating the self-referential equation over each subinterval and
substituting ``z = L_i^{-1}(x)`` gives::

    int f_a = (int f - lambda * int b) / (1 - lambda),   lambda = sum a_i alpha_i

so the integral of the rough function only needs the integrals of the two
smooth ones.  The rest of this module is the algebra that follows from it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import AlphaFractalSpec, ScaleVector, scale_lambda, validate
from .evaluate import depth_for_tolerance, eval_points
from .exceptions import NoConvergence, NotAffine, SpecMismatch
from .expr import FunctionExpr, affine_image, detect_affine, parse_expr, scale_sum, to_polynomial
from .quadrature import adaptive_simpson

__all__ = [
    "IntegralResult",
    "LimitReport",
    "definite_integral",
    "integrate_closed_form",
    "sum_zero_shortcut",
    "scale_vectors_equivalent",
    "combine_linear",
    "compose_affine",
    "compose_expr",
    "integral_limit_check",
    "QUAD_TOL",
]

QUAD_TOL = 1e-12
ALGEBRA_TOL = 1e-10


@dataclass(frozen=True)
class IntegralResult:
    value: float
    lambda_: float
    integral_f: float
    integral_b: float


def _check(cond, msg):
    if not cond:
        raise AssertionError(msg)


def _close(u, v, tol=ALGEBRA_TOL):
    return abs(u - v) <= tol * max(1.0, abs(u), abs(v))


def definite_integral(expr: FunctionExpr, a: float, b: float) -> float:
    """``int_a^b expr(x) dx``; exact for polynomials, adaptive Simpson otherwise.

    Raises:
        NoConvergence: adaptive Simpson could not reach ``1e-12``.
    """
    coeffs = to_polynomial(expr)
    if coeffs is not None:
        fa, fb = Fraction(float(a)), Fraction(float(b))
        total = sum(
            (c * (fb ** (k + 1) - fa ** (k + 1)) / (k + 1) for k, c in enumerate(coeffs)),
            Fraction(0),
        )
        return float(total)
    res = adaptive_simpson(expr, a, b, QUAD_TOL)
    if not res.converged:
        raise NoConvergence(f"quadrature of '{expr}' did not converge on [{a}, {b}]")
    return res.value


def integrate_closed_form(spec: AlphaFractalSpec) -> IntegralResult:
    """Definite integral of ``f^alpha`` over its whole interval."""
    x0, xN = spec.interval
    lam = scale_lambda(spec)
    int_f = definite_integral(spec.f, x0, xN)
    int_b = definite_integral(spec.b, x0, xN)
    value = (int_f - lam * int_b) / (1.0 - lam)
    return IntegralResult(value, lam, int_f, int_b)


def sum_zero_shortcut(spec: AlphaFractalSpec):
    """``int f`` when the partition is uniform and the scales sum to zero, else None."""
    if not spec.partition.is_uniform() or abs(math.fsum(spec.alpha.alphas)) > 1e-12:
        return None
    x0, xN = spec.interval
    value = definite_integral(spec.f, x0, xN)
    _check(
        _close(value, integrate_closed_form(spec).value),
        "zero-sum shortcut disagrees with the closed form",
    )
    return value


def _require_same(spec_a, spec_b, *, alpha=False, functions=False):
    if spec_a.partition != spec_b.partition:
        raise SpecMismatch("specs use different partitions")
    if alpha and spec_a.alpha != spec_b.alpha:
        raise SpecMismatch("specs use different scale vectors")
    if functions and (spec_a.f != spec_b.f or spec_a.b != spec_b.b):
        raise SpecMismatch("specs use different germ or base functions")


def scale_vectors_equivalent(spec_a: AlphaFractalSpec, spec_b: AlphaFractalSpec) -> bool:
    """True when both scale vectors give the same integral for every ``f`` and ``b``.

    That holds on a uniform partition whenever the scale sums agree.  The
    functions themselves generally differ; only the integrals coincide.

    Raises:
        SpecMismatch: the specs differ in partition, germ or base.
    """
    _require_same(spec_a, spec_b, functions=True)
    if not spec_a.partition.is_uniform():
        return False
    same = abs(math.fsum(spec_a.alpha.alphas) - math.fsum(spec_b.alpha.alphas)) <= 1e-12
    if same:
        _check(
            _close(integrate_closed_form(spec_a).value, integrate_closed_form(spec_b).value),
            "equal scale sums but different integrals",
        )
    return same


def combine_linear(
    spec_f: AlphaFractalSpec, spec_g: AlphaFractalSpec, gamma: float, delta: float
) -> AlphaFractalSpec:
    """Spec of ``gamma*f + delta*g`` with base ``gamma*b + delta*b~``.

    Its fractal function equals ``gamma*f^alpha + delta*g^alpha``.

    Raises:
        SpecMismatch: the specs differ in partition or scale vector.
    """
    _require_same(spec_f, spec_g, alpha=True)
    gamma, delta = float(gamma), float(delta)
    combined = validate(
        AlphaFractalSpec(
            spec_f.partition,
            spec_f.alpha,
            scale_sum([(gamma, spec_f.f), (delta, spec_g.f)]),
            scale_sum([(gamma, spec_f.b), (delta, spec_g.b)]),
        )
    )
    expected = gamma * integrate_closed_form(spec_f).value + delta * integrate_closed_form(spec_g).value
    _check(
        _close(integrate_closed_form(combined).value, expected),
        "linear combination breaks integral linearity",
    )
    return combined


def compose_affine(spec: AlphaFractalSpec, p: float, q: float) -> AlphaFractalSpec:
    """Spec of ``g o f`` with base ``g o b`` for ``g(y) = p*y + q``.

    Its fractal function is ``g o f^alpha``.
    """
    p, q = float(p), float(q)
    if not (math.isfinite(p) and math.isfinite(q)):
        raise ValueError("p and q must be finite")
    composed = validate(
        AlphaFractalSpec(spec.partition, spec.alpha, affine_image(spec.f, p, q), affine_image(spec.b, p, q))
    )
    x0, xN = spec.interval
    expected = p * integrate_closed_form(spec).value + q * (xN - x0)
    _check(
        _close(integrate_closed_form(composed).value, expected),
        "affine composition breaks the integral identity",
    )
    return composed


def compose_expr(spec: AlphaFractalSpec, g, samples: int = 1025):
    """Compose with a textual ``g`` after checking it is affine on the range of ``f^alpha``.

    Returns ``(composed_spec, (p, q))``.

    Raises:
        NotAffine: ``g`` is not affine on the observed range.
    """
    g = parse_expr(g) if isinstance(g, str) else g
    x0, xN = spec.interval
    xs = np.linspace(x0, xN, samples)
    ys = eval_points(spec, xs, depth_for_tolerance(spec, 1e-8))
    lo, hi = float(np.min(ys)), float(np.max(ys))
    pad = max(0.05 * (hi - lo), 1.0 if hi == lo else 0.0)
    pq = detect_affine(g, (lo - pad, hi + pad))
    if pq is None:
        raise NotAffine(f"'{g}' is not affine on [{lo - pad:.6g}, {hi + pad:.6g}]")
    return compose_affine(spec, *pq), pq


@dataclass(frozen=True)
class LimitReport:
    ts: tuple
    values: tuple
    diffs: tuple
    integral_f: float
    monotone: bool


def _scaled(spec, t):
    alphas = tuple(t * a for a in spec.alpha.alphas)
    return AlphaFractalSpec(spec.partition, ScaleVector(alphas), spec.f, spec.b)


def integral_limit_check(spec: AlphaFractalSpec, ts=(1.0, 0.5, 0.25, 0.125, 0.0625)) -> LimitReport:
    """Integrals of ``f^(t*alpha)`` for shrinking ``t`` and their distance to ``int f``."""
    x0, xN = spec.interval
    int_f = definite_integral(spec.f, x0, xN)
    values = tuple(integrate_closed_form(_scaled(spec, t)).value for t in ts)
    diffs = tuple(abs(v - int_f) for v in values)
    monotone = all(d1 <= d0 for d0, d1 in zip(diffs, diffs[1:]))
    return LimitReport(tuple(ts), values, diffs, int_f, monotone)

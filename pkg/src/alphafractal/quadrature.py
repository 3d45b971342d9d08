"""Quadrature used to integrate germs, bases and sampled fractal functions.

Smooth expressions go through adaptive Simpson; sampled fractal functions,
which are continuous but rough, go through a compensated composite
trapezoid sum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import SUP_SAFETY, GridFunction
from .exceptions import MaxDepthExceeded

__all__ = [
    "QuadratureResult",
    "adaptive_simpson",
    "trapezoid_grid",
    "sup_norm_diff",
    "MAX_DEPTH",
]

MAX_DEPTH = 60


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int
    converged: bool = True
    depth_limited: bool = False


def adaptive_simpson(fn, a: float, b: float, tol: float, strict: bool = False) -> QuadratureResult:
    """Integrate a scalar callable over ``[a, b]`` to absolute tolerance ``tol``.

    Panels are split until ``|S_left + S_right - S_whole| <= 15 * tol_local``,
    halving the local tolerance at each level, and the Richardson-corrected
    sum is returned.  Exact for cubics.

    Panels that reach depth 60 are accepted as they stand and the result is
    marked ``depth_limited``.  It counts as converged only if the summed
    error estimate is still within ``tol``; otherwise the best estimate is
    returned with ``converged=False``, or :class:`MaxDepthExceeded` is
    raised when ``strict`` is set.
    """
    a, b = float(a), float(b)
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    if not tol > 0:
        raise ValueError("tol must be positive")

    count = 0
    exhausted = False

    def f(x):
        nonlocal count
        count += 1
        return float(fn(x))

    def simpson(lo, flo, hi, fhi):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        return mid, fmid, (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)

    def recurse(lo, flo, hi, fhi, mid, fmid, whole, eps, depth):
        nonlocal exhausted
        lm, flm, left = simpson(lo, flo, mid, fmid)
        rm, frm, right = simpson(mid, fmid, hi, fhi)
        delta = left + right - whole
        if depth >= MAX_DEPTH:
            exhausted = True
            return left + right + delta / 15.0, abs(delta) / 15.0
        if abs(delta) <= 15.0 * eps:
            return left + right + delta / 15.0, abs(delta) / 15.0
        v1, e1 = recurse(lo, flo, mid, fmid, lm, flm, left, 0.5 * eps, depth + 1)
        v2, e2 = recurse(mid, fmid, hi, fhi, rm, frm, right, 0.5 * eps, depth + 1)
        return v1 + v2, e1 + e2

    fa, fb = f(a), f(b)
    m, fm, whole = simpson(a, fa, b, fb)
    value, err = recurse(a, fa, b, fb, m, fm, whole, tol, 1)
    converged = not exhausted or err <= tol
    result = QuadratureResult(value, err, count, converged, exhausted)
    if not converged and strict:
        raise MaxDepthExceeded(
            f"adaptive Simpson hit depth {MAX_DEPTH} on [{a}, {b}]", result
        )
    return result


def trapezoid_grid(g: GridFunction) -> float:
    """Composite trapezoid rule on a possibly non-uniform grid.

    Panel areas are summed with ``math.fsum`` so the result does not depend
    on summation order.
    """
    xs, ys = np.asarray(g.xs), np.asarray(g.ys)
    if len(xs) < 2:
        raise ValueError("need at least two grid points")
    areas = 0.5 * np.diff(xs) * (ys[:-1] + ys[1:])
    return math.fsum(areas.tolist())


def _sample(fn, xs):
    try:
        out = np.asarray(fn(xs), dtype=float)
        if out.shape == xs.shape:
            return out
    except (TypeError, ValueError):
        pass
    return np.array([float(fn(x)) for x in xs])


def sup_norm_diff(fn1, fn2, a: float, b: float, m: int) -> float:
    """``1.25 * max |fn1 - fn2|`` over ``m`` equally spaced points of ``[a, b]``."""
    if m < 2:
        raise ValueError("need m >= 2 samples")
    xs = np.linspace(float(a), float(b), int(m))
    return SUP_SAFETY * float(np.max(np.abs(_sample(fn1, xs) - _sample(fn2, xs))))

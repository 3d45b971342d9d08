"""Problem instances and the affine IFS coefficient table.

An :class:`AlphaFractalSpec` bundles the partition, scale vector, germ ``f``
and base ``b``.  For subinterval ``i`` the maps are::

    L_i(x)    = a_i * x + e_i
    F_i(x, y) = alpha_i * y + f(L_i(x)) - alpha_i * b(x)

with ``a_i = (x_i - x_{i-1}) / (x_N - x_0)`` and
``e_i = (x_N x_{i-1} - x_0 x_i) / (x_N - x_0)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Union

import numpy as np

from .exceptions import (
    ExprDomainError,
    BaseEndpointMismatch,
    LengthMismatch,
    NonMonotonePartition,
    OutOfDomain,
    ScaleOutOfRange,
    SpecError,
)
from .expr import FunctionExpr, eval_expr, parse_expr

__all__ = [
    "Partition",
    "ScaleVector",
    "AlphaFractalSpec",
    "IfsMaps",
    "GridFunction",
    "make_spec",
    "validate",
    "build_maps",
    "locate_interval",
    "scale_lambda",
    "perturbation_bound",
    "ENDPOINT_ATOL",
    "SUP_SAMPLES",
    "SUP_SAFETY",
]

ENDPOINT_ATOL = 1e-12
SUP_SAMPLES = 16385
SUP_SAFETY = 1.25


@dataclass(frozen=True)
class Partition:
    """Knots ``x_0 < x_1 < ... < x_N`` with ``N >= 2``."""

    knots: tuple

    def __post_init__(self):
        knots = tuple(float(k) for k in self.knots)
        object.__setattr__(self, "knots", knots)
        if len(knots) < 3:
            raise NonMonotonePartition(
                f"a partition needs N >= 2 subintervals, got {len(knots) - 1}"
            )
        if not all(math.isfinite(k) for k in knots):
            raise NonMonotonePartition("partition knots must be finite")
        for i in range(1, len(knots)):
            if not knots[i - 1] < knots[i]:
                raise NonMonotonePartition(
                    f"knots not strictly increasing at index {i}: "
                    f"{knots[i - 1]!r} >= {knots[i]!r}"
                )

    @classmethod
    def uniform(cls, x0: float, xN: float, n: int) -> "Partition":
        """``n`` equal subintervals of ``[x0, xN]``.

        Knots are measured from the nearer end, so the uniform partition of
        ``[-xN, -x0]`` is exactly the mirror image of that of ``[x0, xN]``.
        """
        x0, xN, n = float(x0), float(xN), int(n)
        if n < 2:
            raise NonMonotonePartition(f"a partition needs N >= 2 subintervals, got {n}")
        w = xN - x0
        knots = []
        for i in range(n + 1):
            if 2 * i < n:
                knots.append(x0 + w * i / n)
            elif 2 * i > n:
                knots.append(xN - w * (n - i) / n)
            else:
                knots.append(0.5 * (x0 + xN))
        return cls(tuple(knots))

    @property
    def n(self) -> int:
        return len(self.knots) - 1

    @property
    def x0(self) -> float:
        return self.knots[0]

    @property
    def xN(self) -> float:
        return self.knots[-1]

    @property
    def width(self) -> float:
        return self.knots[-1] - self.knots[0]

    def is_uniform(self, tol: float = 1e-12) -> bool:
        a = np.diff(self.knots) / self.width
        return bool(np.max(np.abs(a - a[0])) <= tol)


@dataclass(frozen=True)
class ScaleVector:
    """Vertical scaling factors, each strictly inside (-1, 1)."""

    alphas: tuple

    def __post_init__(self):
        alphas = tuple(float(a) for a in self.alphas)
        object.__setattr__(self, "alphas", alphas)
        for i, a in enumerate(alphas, start=1):
            if not (math.isfinite(a) and abs(a) < 1):
                raise ScaleOutOfRange(f"|alpha_{i}| = {abs(a)!r} is not < 1")

    @property
    def sup_norm(self) -> float:
        return max((abs(a) for a in self.alphas), default=0.0)

    def __len__(self):
        return len(self.alphas)


def _as_expr(e: Union[str, FunctionExpr]) -> FunctionExpr:
    return parse_expr(e) if isinstance(e, str) else e


@dataclass(frozen=True)
class AlphaFractalSpec:
    """Full problem instance.  Immutable; construct with :func:`make_spec`."""

    partition: Partition
    alpha: ScaleVector
    f: FunctionExpr
    b: FunctionExpr

    @property
    def knots(self):
        return self.partition.knots

    @property
    def n(self):
        return self.partition.n

    @property
    def interval(self):
        return self.partition.x0, self.partition.xN

    @cached_property
    def maps(self) -> "IfsMaps":
        return build_maps(self)

    @cached_property
    def sup_diff_raw(self) -> float:
        """Max of ``|f - b|`` over ``SUP_SAMPLES`` equally spaced points."""
        xs = np.linspace(self.partition.x0, self.partition.xN, SUP_SAMPLES)
        return float(np.max(np.abs(eval_expr(self.f, xs) - eval_expr(self.b, xs))))

    @property
    def sup_diff(self) -> float:
        """Safety-inflated estimate of ``||f - b||_inf`` used for depth selection."""
        return SUP_SAFETY * self.sup_diff_raw


@dataclass(frozen=True)
class IfsMaps:
    """Rows ``(a_i, e_i, alpha_i)`` of the affine IFS, one per subinterval."""

    a: np.ndarray
    e: np.ndarray
    alpha: np.ndarray

    @property
    def rows(self):
        return list(zip(self.a.tolist(), self.e.tolist(), self.alpha.tolist()))

    def forward(self, i: int, x):
        """``L_i(x)`` with 1-based ``i``."""
        return self.a[i - 1] * x + self.e[i - 1]

    def inverse(self, i: int, x):
        """``L_i^{-1}(x)`` with 1-based ``i``."""
        return (x - self.e[i - 1]) / self.a[i - 1]

    def __eq__(self, other):
        if not isinstance(other, IfsMaps):
            return NotImplemented
        return all(
            np.array_equal(getattr(self, k), getattr(other, k)) for k in ("a", "e", "alpha")
        )

    __hash__ = None


def make_spec(
    f: Union[str, FunctionExpr],
    b: Union[str, FunctionExpr],
    alpha: Sequence[float],
    knots: Sequence[float] = None,
    *,
    uniform: int = None,
    interval=(0.0, 1.0),
) -> AlphaFractalSpec:
    """Build and validate a spec.

    Either pass explicit ``knots`` or ``uniform=N`` together with
    ``interval``.
    """
    if (knots is None) == (uniform is None):
        raise ValueError("give exactly one of knots= or uniform=")
    if knots is not None:
        partition = Partition(tuple(knots))
    else:
        partition = Partition.uniform(interval[0], interval[1], uniform)
    if len(alpha) != partition.n:
        raise LengthMismatch(
            f"scale vector has {len(alpha)} entries but the partition has "
            f"{partition.n} subintervals"
        )
    spec = AlphaFractalSpec(partition, ScaleVector(tuple(alpha)), _as_expr(f), _as_expr(b))
    return validate(spec)


def validate(spec: AlphaFractalSpec) -> AlphaFractalSpec:
    """Check every invariant of ``spec`` and return it unchanged.

    Raises:
        LengthMismatch: scale vector length differs from ``N``.
        BaseEndpointMismatch: ``b`` and ``f`` differ at ``x_0`` or ``x_N``.
        SpecError: germ values at the knots are not finite.
    """
    part = spec.partition
    if len(spec.alpha) != part.n:
        raise LengthMismatch(
            f"scale vector has {len(spec.alpha)} entries but the partition has "
            f"{part.n} subintervals"
        )
    knots = np.asarray(part.knots)
    try:
        ys = eval_expr(spec.f, knots)
    except ExprDomainError as exc:
        raise SpecError(f"germ is not finite at a knot: {exc}") from exc
    for name, x, y in (("left", part.x0, ys[0]), ("right", part.xN, ys[-1])):
        bx = eval_expr(spec.b, x)
        if not abs(bx - y) <= ENDPOINT_ATOL:
            raise BaseEndpointMismatch(name, x, abs(bx - y))

    maps = spec.maps
    L_lo = maps.a * part.x0 + maps.e
    L_hi = maps.a * part.xN + maps.e
    tol = ENDPOINT_ATOL * max(1.0, abs(part.x0), abs(part.xN))
    assert np.all(np.abs(L_lo - knots[:-1]) <= tol), "L_i(x_0) != x_{i-1}"
    assert np.all(np.abs(L_hi - knots[1:]) <= tol), "L_i(x_N) != x_i"
    # join-up: F_i(x_0, y_0) = y_{i-1}, F_i(x_N, y_N) = y_i
    b0 = eval_expr(spec.b, part.x0)
    bN = eval_expr(spec.b, part.xN)
    F_lo = maps.alpha * ys[0] + ys[:-1] - maps.alpha * b0
    F_hi = maps.alpha * ys[-1] + ys[1:] - maps.alpha * bN
    ytol = 4 * ENDPOINT_ATOL * max(1.0, float(np.max(np.abs(ys))))
    assert np.all(np.abs(F_lo - ys[:-1]) <= ytol), "join-up failed at x_0"
    assert np.all(np.abs(F_hi - ys[1:]) <= ytol), "join-up failed at x_N"
    return spec


def build_maps(spec: AlphaFractalSpec) -> IfsMaps:
    """Coefficients ``a_i``, ``e_i`` of ``L_i`` alongside ``alpha_i``."""
    x = np.asarray(spec.partition.knots, dtype=float)
    x0, xN = x[0], x[-1]
    width = xN - x0
    a = (x[1:] - x[:-1]) / width
    e = (xN * x[:-1] - x0 * x[1:]) / width
    return IfsMaps(a=a, e=e, alpha=np.asarray(spec.alpha.alphas, dtype=float))


def locate_interval(partition: Partition, x) -> Union[int, np.ndarray]:
    """1-based index ``i`` with ``x`` in ``[x_{i-1}, x_i]``.

    Interior knots belong to the interval on their left.  Accepts arrays.

    Raises:
        OutOfDomain: ``x`` outside ``[x_0, x_N]``.
    """
    knots = np.asarray(partition.knots)
    arr = np.asarray(x, dtype=float)
    bad = ~((arr >= knots[0]) & (arr <= knots[-1]))
    if bad.any():
        first = float(arr.flat[int(np.flatnonzero(bad)[0])])
        raise OutOfDomain(first, partition.x0, partition.xN)
    idx = np.searchsorted(knots, arr, side="left")
    idx = np.clip(idx, 1, partition.n)
    if arr.ndim == 0:
        return int(idx)
    return idx


def scale_lambda(spec: AlphaFractalSpec) -> float:
    """``lambda = sum_i a_i * alpha_i`` (correctly rounded, order independent)."""
    maps = spec.maps
    return math.fsum((maps.a * maps.alpha).tolist())


def perturbation_bound(spec: AlphaFractalSpec) -> float:
    """``|alpha|_inf / (1 - |alpha|_inf) * ||f - b||_inf`` using a sampled sup."""
    s = spec.alpha.sup_norm
    if s == 0:
        return 0.0
    return s / (1.0 - s) * spec.sup_diff_raw


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Samples ``ys`` of a function at strictly increasing abscissae ``xs``."""

    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        ys = np.asarray(self.ys, dtype=float)
        if xs.ndim != 1 or xs.shape != ys.shape:
            raise ValueError("xs and ys must be 1-D arrays of equal length")
        if len(xs) < 2 or np.any(np.diff(xs) <= 0):
            raise ValueError("xs must be strictly increasing with at least two points")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
            raise ValueError("grid values must be finite")
        xs.setflags(write=False)
        ys.setflags(write=False)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    def __len__(self):
        return len(self.xs)

    def __call__(self, x):
        """Piecewise-linear interpolant."""
        return np.interp(x, self.xs, self.ys)

    def modulus(self) -> float:
        """Largest jump between neighbouring samples."""
        return float(np.max(np.abs(np.diff(self.ys))))

"""Mirror images of alpha-fractal functions about the y-axis.

The flipped system lives on ``[-x_N, -x_0]`` with knots
``-x_N < ... < -x_0``, scale vector ``(alpha_N, ..., alpha_1)``, germ
``f(-x)`` and base ``b(-x)``.  Its fractal function is ``x -> f^alpha(-x)``.
"""
from __future__ import annotations

from .core import AlphaFractalSpec, Partition, ScaleVector, validate
from .evaluate import EvalReport, eval_point
from .expr import negate_argument
from .integral import integrate_closed_form

__all__ = ["FlippedSpec", "flip_spec", "eval_flipped", "flip_integral"]

# The flipped system is an ordinary spec on the mirrored interval.
FlippedSpec = AlphaFractalSpec


def flip_spec(spec: AlphaFractalSpec) -> FlippedSpec:
    """Reflect ``spec`` about the y-axis.  Applying it twice gives ``spec`` back."""
    knots = tuple(-k for k in reversed(spec.partition.knots))
    alphas = tuple(reversed(spec.alpha.alphas))
    return validate(
        AlphaFractalSpec(
            Partition(knots),
            ScaleVector(alphas),
            negate_argument(spec.f),
            negate_argument(spec.b),
        )
    )


def eval_flipped(flipped: FlippedSpec, x: float, depth: int) -> EvalReport:
    """Depth-``depth`` value of the flipped fractal function at ``x``."""
    return eval_point(flipped, x, depth)


def flip_integral(spec: AlphaFractalSpec) -> float:
    """Closed-form integral of the flipped fractal function over ``[-x_N, -x_0]``."""
    return integrate_closed_form(flip_spec(spec)).value

"""Alpha-fractal interpolation functions: construction, evaluation with
certified truncation error, closed-form definite integrals and flips."""
from .core import (
    AlphaFractalSpec,
    IfsMaps,
    Partition,
    ScaleVector,
    build_maps,
    locate_interval,
    make_spec,
    perturbation_bound,
    scale_lambda,
    validate,
)
from .estimator import AlphaFractalFunction
from .evaluate import (
    EvalReport,
    GridFunction,
    depth_for_tolerance,
    error_bound,
    eval_grid,
    eval_point,
    eval_points,
    rb_apply,
)
from .expr import FunctionExpr, detect_affine, eval_expr, parse_expr
from .flip import FlippedSpec, eval_flipped, flip_integral, flip_spec
from .integral import (
    IntegralResult,
    combine_linear,
    compose_affine,
    compose_expr,
    integral_limit_check,
    integrate_closed_form,
    scale_vectors_equivalent,
    sum_zero_shortcut,
)
from .quadrature import QuadratureResult, adaptive_simpson, sup_norm_diff, trapezoid_grid

__version__ = "0.1.0"

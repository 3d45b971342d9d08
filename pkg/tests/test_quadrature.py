import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alphafractal import GridFunction, adaptive_simpson, eval_grid, sup_norm_diff, trapezoid_grid
from alphafractal.exceptions import MaxDepthExceeded
from alphafractal.expr import parse_expr


@pytest.mark.parametrize(
    "text, expected",
    [("x^2", 1 / 3), ("1/(x+1)", math.log(2)), ("x^3 + x", 0.75), ("sqrt(x)", 2 / 3)],
)
def test_adaptive_simpson_examples(text, expected):
    res = adaptive_simpson(parse_expr(text), 0.0, 1.0, 1e-12)
    assert res.converged
    assert res.value == pytest.approx(expected, abs=1e-12)
    assert res.abs_error_estimate >= 0
    assert res.evaluations >= 3


@settings(max_examples=100, deadline=None)
@given(
    coeffs=st.lists(st.floats(-10, 10), min_size=4, max_size=4),
    a=st.floats(-3, 3),
    width=st.floats(0.01, 4),
    tol=st.floats(1e-3, 1.0),
)
def test_simpson_exact_for_cubics(coeffs, a, width, tol):
    b = a + width
    c0, c1, c2, c3 = coeffs

    def fn(x):
        return c0 + c1 * x + c2 * x**2 + c3 * x**3

    exact = c0 * (b - a) + c1 * (b**2 - a**2) / 2 + c2 * (b**3 - a**3) / 3 + c3 * (b**4 - a**4) / 4
    res = adaptive_simpson(fn, a, b, tol)
    scale = 1 + sum(abs(c) for c in coeffs) * max(1, abs(a), abs(b)) ** 4
    assert abs(res.value - exact) <= 1e-14 * scale


def test_simpson_flags_depth_limit():
    # a jump closer to 0 than 2^-60 keeps the first panel from ever passing
    def step(x):
        return 0.0 if x < 1e-30 else 1.0

    res = adaptive_simpson(step, 0.0, 1.0, 1e-300)
    assert res.depth_limited and not res.converged
    assert res.value == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(MaxDepthExceeded) as info:
        adaptive_simpson(step, 0.0, 1.0, 1e-300, strict=True)
    assert info.value.result.value == res.value


def test_simpson_argument_checks():
    with pytest.raises(ValueError):
        adaptive_simpson(math.sin, 1.0, 0.0, 1e-6)
    with pytest.raises(ValueError):
        adaptive_simpson(math.sin, 0.0, 1.0, 0.0)


def test_trapezoid_examples():
    xs = np.sort(np.concatenate([[0, 1], np.random.default_rng(2).uniform(0, 1, 50)]))
    assert trapezoid_grid(GridFunction(xs, np.ones_like(xs))) == pytest.approx(1.0, abs=1e-15)
    u = np.linspace(0, 1, 1001)
    assert trapezoid_grid(GridFunction(u, u)) == 0.5


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=5, max_size=5), st.integers(1, 6))
def test_trapezoid_refinement_invariance_for_piecewise_linear(vals, k):
    xs = np.linspace(0, 1, 5)
    coarse = GridFunction(xs, vals)
    fine_x = np.linspace(0, 1, 4 * k + 1)
    fine = GridFunction(fine_x, coarse(fine_x))
    assert trapezoid_grid(fine) == pytest.approx(trapezoid_grid(coarse), abs=1e-12)


def test_trapezoid_is_order_independent():
    xs = np.linspace(0, 1, 10001)
    ys = np.sin(40 * xs) * 1e8 + 1
    assert trapezoid_grid(GridFunction(xs, ys)) == trapezoid_grid(GridFunction(xs, ys.copy()))


def test_trapezoid_over_fractal_grid(cubic):
    g = eval_grid(cubic, 2**14 + 1, 1e-8)
    assert trapezoid_grid(g) == pytest.approx(53 / 78, abs=1e-3)


def test_sup_norm_diff():
    f, b = parse_expr("x^3 + x"), parse_expr("2*x")
    assert sup_norm_diff(f, f, 0, 1, 100) == 0.0
    assert sup_norm_diff(f, b, 0, 1, 16385) == pytest.approx(1.25 * 2 / (3 * math.sqrt(3)), rel=1e-7)
    assert sup_norm_diff(lambda x: x, lambda x: 0.0, 0, 1, 11) == 1.25
    with pytest.raises(ValueError):
        sup_norm_diff(f, b, 0, 1, 1)

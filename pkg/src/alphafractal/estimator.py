"""scikit-learn style front end.

:class:`AlphaFractalFunction` holds the problem parameters as constructor
arguments, so ``get_params``/``set_params``/``clone`` work as usual.
``fit`` validates them and builds the IFS; ``predict`` evaluates the
fractal function at a 1-D array of abscissae.

>>> est = AlphaFractalFunction(f="x^3 + x", b="2*x",
...                            alpha=(0.2, -0.3, 0.5, 0.3, 0.4), n_intervals=5).fit()
>>> round(est.integral_.value, 12)
0.679487179487
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .core import AlphaFractalSpec, make_spec, perturbation_bound
from .evaluate import depth_for_tolerance, error_bound, eval_grid, eval_points
from .flip import flip_spec
from .integral import integrate_closed_form

__all__ = ["AlphaFractalFunction"]


def _as_column(X):
    """Accept shape ``(n,)`` or ``(n, 1)`` and return a flat float array."""
    X = check_array(X, ensure_2d=False, dtype=np.float64, input_name="X")
    if X.ndim == 2:
        if X.shape[1] != 1:
            raise ValueError(f"X must have exactly one feature, got {X.shape[1]}")
        X = X[:, 0]
    return X


class AlphaFractalFunction(TransformerMixin, BaseEstimator):
    """Alpha-fractal function of a germ ``f`` with base ``b``.

    Parameters
    ----------
    f, b : str or FunctionExpr
        Germ and base; ``b`` must match ``f`` at both ends of the interval.
    alpha : sequence of float
        Scale vector, one entry per subinterval, each ``|alpha_i| < 1``.
    knots : sequence of float, optional
        Explicit partition.  Mutually exclusive with ``n_intervals``.
    n_intervals : int, optional
        Number of equal subintervals of ``interval``.
    interval : (float, float)
        Used with ``n_intervals``.
    tol : float
        Target truncation error for ``predict``.

    Attributes
    ----------
    spec_ : AlphaFractalSpec
    maps_ : IfsMaps
    lambda_ : float
    depth_ : int
        Unrolling depth certified for ``tol``.
    error_bound_ : float
    integral_ : IntegralResult
    """

    def __init__(self, f="x", b="x", alpha=(0.0, 0.0), knots=None, n_intervals=None,
                 interval=(0.0, 1.0), tol=1e-8):
        self.f = f
        self.b = b
        self.alpha = alpha
        self.knots = knots
        self.n_intervals = n_intervals
        self.interval = interval
        self.tol = tol

    @classmethod
    def from_spec(cls, spec: AlphaFractalSpec, tol=1e-8):
        """Fitted estimator wrapping an existing spec."""
        # explicit knots so that refitting reproduces the spec bit for bit
        est = cls(f=str(spec.f), b=str(spec.b), alpha=spec.alpha.alphas, knots=spec.knots,
                  interval=spec.interval, tol=tol)
        est._set_fitted(spec)
        return est

    def _set_fitted(self, spec):
        self.spec_ = spec
        self.maps_ = spec.maps
        self.integral_ = integrate_closed_form(spec)
        self.lambda_ = self.integral_.lambda_
        self.depth_ = depth_for_tolerance(spec, self.tol)
        self.error_bound_ = error_bound(spec, self.depth_)
        self.n_features_in_ = 1
        return self

    def fit(self, X=None, y=None):
        """Validate the parameters and build the IFS.  ``X`` and ``y`` are ignored."""
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol!r}")
        if self.n_intervals is None and self.knots is None:
            n = len(self.alpha)
            spec = make_spec(self.f, self.b, self.alpha, uniform=n, interval=self.interval)
        elif self.knots is not None:
            spec = make_spec(self.f, self.b, self.alpha, knots=self.knots)
        else:
            spec = make_spec(self.f, self.b, self.alpha, uniform=self.n_intervals,
                             interval=self.interval)
        return self._set_fitted(spec)

    def predict(self, X):
        check_is_fitted(self, "spec_")
        return eval_points(self.spec_, _as_column(X), self.depth_)

    def transform(self, X):
        return self.predict(X).reshape(-1, 1)

    def predict_grid(self, n=4097):
        """Grid fixed point of the RB operator; an independent cross-check of ``predict``."""
        check_is_fitted(self, "spec_")
        return eval_grid(self.spec_, n, self.tol)

    def integrate(self):
        check_is_fitted(self, "spec_")
        return self.integral_.value

    def perturbation_bound(self):
        check_is_fitted(self, "spec_")
        return perturbation_bound(self.spec_)

    def flip(self):
        """Fitted estimator for the mirror image about the y-axis."""
        check_is_fitted(self, "spec_")
        return type(self).from_spec(flip_spec(self.spec_), tol=self.tol)

"""scikit-learn estimator wrapping the surrogate ensemble and its bounds."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .bounds import BoundsCurve, ensemble_bounds
from .interval import IntervalVector
from .kriging import (
    DEFAULT_BUDGET,
    DEFAULT_NUGGET,
    DEFAULT_POWER,
    DEFAULT_RATE_SCALE,
    RATE_BOUNDS,
    TrainingSet,
    train_ensemble,
)


class IntervalKrigingRegressor(BaseEstimator, RegressorMixin):
    """Ordinary-kriging curve regressor with guaranteed interval bounds.

    Fits one interpolating kriging model per output column and, besides the
    usual ``predict``, exposes ``predict_bounds``: closed-form lower/upper
    bounds of the surrogate over a box of input intervals.

    Parameters
    ----------
    kernel_power : float, default 2.0
        Exponent on the per-dimension distances in the correlation kernel.
    rate : "auto", "optimize", float or array, default "auto"
        Kernel rates.  "auto" uses the calibrated value
        ``rate_scale / Var(X_n)`` per dimension; "optimize" searches rates
        with ``objective``; numbers are used as given (raw units).
    rate_scale : float, default 1.2
        Variance-normalized rate used by the "auto" policy.
    rate_mode : {"shared", "per-theta"}, default "shared"
        Whether optimized rates are shared by all output columns or fitted
        per column.
    objective : {"likelihood", "loo"}, default "likelihood"
        Search criterion when ``rate="optimize"``.
    rate_bounds : pair of floats
        Search range for variance-normalized rates.
    budget : int
        Objective-evaluation budget for the rate search.
    nugget : float
        Diagonal stabilizer added to the correlation matrix.
    theta_grid : array or None
        Grid attached to returned bounds curves; defaults to column indices.
    """

    def __init__(
        self,
        kernel_power=DEFAULT_POWER,
        rate="auto",
        rate_scale=DEFAULT_RATE_SCALE,
        rate_mode="shared",
        objective="likelihood",
        rate_bounds=RATE_BOUNDS,
        budget=DEFAULT_BUDGET,
        nugget=DEFAULT_NUGGET,
        theta_grid=None,
    ):
        self.kernel_power = kernel_power
        self.rate = rate
        self.rate_scale = rate_scale
        self.rate_mode = rate_mode
        self.objective = objective
        self.rate_bounds = rate_bounds
        self.budget = budget
        self.nugget = nugget
        self.theta_grid = theta_grid

    def fit(self, X, y):
        """Fit per-column kriging models to curves ``y`` of shape (S, K)."""
        X = check_array(X, ensure_min_samples=1)
        y = check_array(y, ensure_2d=False)
        if y.ndim == 1:
            y = y[:, None]
        if y.shape[0] != X.shape[0]:
            raise ValueError(f"X has {X.shape[0]} samples but y has {y.shape[0]}")
        if self.theta_grid is not None:
            grid = np.asarray(self.theta_grid, dtype=float)
            if grid.shape[0] != y.shape[1]:
                raise ValueError(f"theta_grid has {grid.shape[0]} points but y has {y.shape[1]} columns")
        else:
            grid = np.arange(y.shape[1], dtype=float)

        ts = TrainingSet(X, y, grid)
        if isinstance(self.rate, str):
            if self.rate == "auto":
                from .kriging import calibrated_rates

                explicit = calibrated_rates(X, scale=self.rate_scale)
                objective = "calibrated"
            elif self.rate == "optimize":
                explicit = None
                objective = self.objective
            else:
                raise ValueError(f"rate must be 'auto', 'optimize' or numeric, got {self.rate!r}")
        else:
            explicit = np.broadcast_to(np.asarray(self.rate, dtype=float), (X.shape[1],)).copy()
            objective = "calibrated"

        self.ensemble_ = train_ensemble(
            ts,
            power=self.kernel_power,
            rate=explicit,
            rate_mode=self.rate_mode,
            objective=objective,
            rate_bounds=self.rate_bounds,
            budget=self.budget,
            nugget=self.nugget,
        )
        self.n_features_in_ = X.shape[1]
        self.n_outputs_ = y.shape[1]
        return self

    def predict(self, X):
        """Surrogate curves at ``X``; shape (m, K), or (m,) for scalar fits."""
        check_is_fitted(self, "ensemble_")
        X = check_array(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, expected {self.n_features_in_}")
        values = self.ensemble_.predict(X)
        return values[:, 0] if self.n_outputs_ == 1 else values

    def predict_bounds(self, box) -> BoundsCurve:
        """Guaranteed bounds of the surrogate over ``box``.

        ``box`` is an IntervalVector or an (N, 2) array of lo/hi pairs.
        """
        check_is_fitted(self, "ensemble_")
        if not isinstance(box, IntervalVector):
            arr = np.asarray(box, dtype=float)
            if arr.ndim != 2 or arr.shape[1] != 2:
                raise ValueError("box must be an IntervalVector or an (N, 2) array")
            box = IntervalVector(arr[:, 0], arr[:, 1])
        if len(box) != self.n_features_in_:
            raise ValueError(f"box has {len(box)} entries, expected {self.n_features_in_}")
        return ensemble_bounds(self.ensemble_, box)

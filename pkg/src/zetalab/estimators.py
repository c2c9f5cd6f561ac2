"""scikit-learn compatible wrapper around the log-power exponent fit."""
from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .bounds import fit_exponent


class ExponentFitter(RegressorMixin, BaseEstimator):
    """Least-squares line y = slope * x + intercept on a single feature.

    With ``log_features=True`` the inputs are raw (T, S/(T Y^m)) pairs and
    the fit is done on (log log T, log ratio), so ``slope_`` is the
    empirical exponent of log T.

    Examples
    --------
    >>> import numpy as np
    >>> X = np.array([[1.0], [2.0], [3.0]])
    >>> round(ExponentFitter().fit(X, [1.0, 3.0, 5.0]).slope_, 12)
    2.0
    """

    def __init__(self, log_features: bool = False):
        self.log_features = log_features

    def _features(self, X):
        X = check_array(X, ensure_min_samples=1)
        if X.shape[1] != 1:
            raise ValueError(f"expected a single feature column, got {X.shape[1]}")
        x = X[:, 0]
        if self.log_features:
            if np.any(x <= math.e):
                raise ValueError("log-log features need T > e")
            x = np.log(np.log(x))
        return x

    def fit(self, X, y):
        X, y = check_X_y(X, y, ensure_min_samples=3, y_numeric=True)
        x = self._features(X)
        if self.log_features:
            if np.any(y <= 0):
                raise ValueError("log-log targets must be positive")
            y = np.log(y)
        res = fit_exponent(zip(x, y))
        self.slope_ = res.slope
        self.intercept_ = res.intercept
        self.residual_ = res.residual
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, ("slope_", "intercept_"))
        pred = self.slope_ * self._features(X) + self.intercept_
        return np.exp(pred) if self.log_features else pred

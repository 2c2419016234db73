"""scikit-learn compatible wrappers.

Samples are SPD matrices stacked along the first axis, shape
``(n_samples, n, n)``.  Transformers emit 2-D arrays so they can sit inside
a ``Pipeline``.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import DimensionMismatchError, check_spd
from .barycenter import KARCHER_MAX_ITER, KARCHER_TOL, karcher_mean, log_euclidean_mean
from .linalg import _apply, _sqrt_pair, eigenvalue_map
from .measures import DiscreteMeasure
from .symplectic import extended_symplectic_map


def check_spd_stack(X):
    X = np.asarray(X, dtype=float)
    if X.ndim == 2:
        X = X[None]
    if X.ndim != 3 or X.shape[1] != X.shape[2]:
        raise DimensionMismatchError(f"expected shape (n_samples, n, n), got {X.shape}")
    return np.stack([check_spd(A, f"X[{i}]") for i, A in enumerate(X)])


def _normalize_weights(sample_weight, k):
    if sample_weight is None:
        return np.full(k, 1.0 / k)
    w = np.asarray(sample_weight, dtype=float)
    return w / w.sum()


def _upper(n):
    rows, cols = np.triu_indices(n)
    coef = np.where(rows == cols, 1.0, np.sqrt(2.0))
    return rows, cols, coef


class _TangentMean(TransformerMixin, BaseEstimator):
    # transform = log map at mean_, vectorized so that ||t(X)|| = delta(mean_, X)

    def transform(self, X):
        check_is_fitted(self, "mean_")
        X = check_spd_stack(X)
        if X.shape[1] != self.mean_.shape[0]:
            raise DimensionMismatchError("dimension differs from the fitted mean")
        _, root_inv = _sqrt_pair(self.mean_)
        rows, cols, coef = _upper(X.shape[1])
        out = []
        for A in X:
            M = root_inv @ A @ root_inv
            out.append(coef * _apply(0.5 * (M + M.T), np.log)[rows, cols])
        return np.asarray(out)

    def inverse_transform(self, T):
        check_is_fitted(self, "mean_")
        T = np.atleast_2d(np.asarray(T, dtype=float))
        n = self.mean_.shape[0]
        rows, cols, coef = _upper(n)
        root, _ = _sqrt_pair(self.mean_)
        out = []
        for t in T:
            S = np.zeros((n, n))
            S[rows, cols] = t / coef
            S = S + np.triu(S, 1).T
            P = root @ _apply(S, np.exp) @ root
            out.append(0.5 * (P + P.T))
        return np.asarray(out)


class KarcherMean(_TangentMean):
    """Weighted Karcher (Cartan) mean of SPD samples.

    Attributes
    ----------
    mean_ : ndarray of shape (n, n)
    residual_norm_ : float
    n_iter_ : int
    """

    def __init__(self, tol=KARCHER_TOL, max_iter=KARCHER_MAX_ITER):
        self.tol = tol
        self.max_iter = max_iter

    def fit(self, X, y=None, sample_weight=None):
        X = check_spd_stack(X)
        mu = DiscreteMeasure(X, _normalize_weights(sample_weight, len(X)), validate=False)
        result = karcher_mean(mu, self.tol, self.max_iter)
        self.mean_ = result.mean
        self.residual_norm_ = result.residual_norm
        self.n_iter_ = result.iterations
        return self


class LogEuclideanMean(_TangentMean):
    """``exp`` of the weighted average of matrix logarithms."""

    def fit(self, X, y=None, sample_weight=None):
        X = check_spd_stack(X)
        mu = DiscreteMeasure(X, _normalize_weights(sample_weight, len(X)), validate=False)
        self.mean_ = log_euclidean_mean(mu)
        return self


class EigenvalueMap(TransformerMixin, BaseEstimator):
    """Stateless transformer: each SPD sample to its decreasing eigenvalues."""

    def fit(self, X, y=None):
        check_spd_stack(X)
        return self

    def transform(self, X):
        return np.asarray([eigenvalue_map(A) for A in check_spd_stack(X)])


class SymplecticSpectrumMap(TransformerMixin, BaseEstimator):
    """Stateless transformer: each ``2n x 2n`` SPD sample to its extended symplectic eigenvalues."""

    def fit(self, X, y=None):
        check_spd_stack(X)
        return self

    def transform(self, X):
        return np.asarray([extended_symplectic_map(A) for A in check_spd_stack(X)])

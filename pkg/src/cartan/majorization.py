"""Log-majorization and majorization predicates on ordered vectors.

All comparisons run in the log domain.  A predicate returns a
:class:`Verdict`, which is truthy exactly when the relation holds and also
records how close the nearest constraint came to failing.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._validation import DimensionMismatchError, check_ordered_positive, check_weights

DEFAULT_RTOL = 1e-9


@dataclass(frozen=True)
class Verdict:
    holds: bool
    margin: float
    index: Optional[int] = None

    def __bool__(self):
        return self.holds


def _decreasing(a):
    a = np.asarray(a, dtype=float).reshape(-1)
    return -np.sort(-a, kind="stable")


def majorization_margins(a, b):
    """Prefix slacks ``sum_{i<=k} b_i - sum_{i<=k} a_i`` for ``k < n`` and the total gap.

    Inputs are sorted decreasingly first.  Returns ``(slacks, total_gap)``
    where ``total_gap = sum(b) - sum(a)``.
    """
    a = _decreasing(a)
    b = _decreasing(b)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"dimension mismatch: {a.shape} vs {b.shape}")
    ca, cb = np.cumsum(a), np.cumsum(b)
    return cb[:-1] - ca[:-1], float(cb[-1] - ca[-1]), cb


def log_majorization_margins(a, b):
    """Same as :func:`majorization_margins` applied to ``log a`` and ``log b``."""
    a = check_ordered_positive(a, "a")
    b = check_ordered_positive(b, "b")
    slacks, gap, _ = majorization_margins(np.log(a), np.log(b))
    return slacks, gap


def _verdict(a, b, tol, relative, total):
    slacks, gap, cb = majorization_margins(a, b)
    scale = (1.0 + np.abs(cb)) if relative else np.ones_like(cb)
    bad = np.flatnonzero(slacks < -tol * scale[:-1])
    index = int(bad[0]) if bad.size else None
    margin = float(slacks.min()) if slacks.size else np.inf
    holds = index is None
    if total:
        margin = min(margin, -abs(gap))
        if abs(gap) > tol * scale[-1]:
            holds = False
            if index is None:
                index = len(cb) - 1
    return Verdict(holds, margin, index)


def log_majorizes(a, b, rel_tol=DEFAULT_RTOL) -> Verdict:
    """Whether ``a`` is log-majorized by ``b``.

    True iff, for every ``k < n``, ``sum_{i<=k} log a_i <= sum_{i<=k} log b_i``
    and the full sums agree, each up to ``rel_tol * (1 + |sum log b|)``.
    ``index`` is the first failing prefix (0-based, ``n - 1`` for the total).
    """
    a = check_ordered_positive(a, "a")
    b = check_ordered_positive(b, "b")
    return _verdict(np.log(a), np.log(b), rel_tol, relative=True, total=True)


def weak_log_majorizes(a, b, rel_tol=DEFAULT_RTOL) -> Verdict:
    """Prefix conditions of :func:`log_majorizes` without the determinant equality."""
    a = check_ordered_positive(a, "a")
    b = check_ordered_positive(b, "b")
    return _verdict(np.log(a), np.log(b), rel_tol, relative=True, total=False)


def additive_majorizes(a, b, tol=DEFAULT_RTOL) -> Verdict:
    """Whether ``a`` is majorized by ``b``: prefix sums bounded, totals equal within ``tol``."""
    return _verdict(np.asarray(a, dtype=float), np.asarray(b, dtype=float), tol, relative=False, total=True)


def vector_geometric_mean(vs, weights=None) -> np.ndarray:
    """Componentwise weighted geometric mean ``exp(sum_j w_j log v_j)``, sorted decreasingly."""
    vs = np.asarray(vs, dtype=float)
    if vs.ndim != 2:
        raise DimensionMismatchError(f"expected an array of shape (m, n), got {vs.shape}")
    if np.any(vs <= 0):
        raise ValueError("vectors must be strictly positive")
    if weights is None:
        weights = np.full(vs.shape[0], 1.0 / vs.shape[0])
    w = check_weights(weights, vs.shape[0])
    return check_ordered_positive(np.exp(w @ np.log(vs)))

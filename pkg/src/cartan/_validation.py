"""Input validation helpers shared by every module.

Matrices are plain ``numpy.ndarray`` objects; these helpers check and
normalize them the way ``sklearn.utils.check_array`` does for tabular data.
"""

import numpy as np

SYMMETRY_RTOL = 1e-12
SPD_RTOL = 1e-12
WEIGHT_ATOL = 1e-12


class DimensionMismatchError(ValueError):
    """Operands have incompatible shapes."""


class NotSymmetricError(ValueError):
    """Matrix is not symmetric within tolerance."""


class NotPositiveDefiniteError(ValueError):
    """Matrix is symmetric but not positive definite."""


def check_square(X, name="X"):
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] != X.shape[1] or X.shape[0] == 0:
        raise DimensionMismatchError(f"{name} must be a non-empty square matrix, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError(f"{name} contains non-finite entries")
    return X


def check_symmetric(X, name="X"):
    """Return the symmetrized copy of ``X`` after checking it is symmetric.

    The asymmetry must not exceed ``1e-12 * (1 + max|X_ij|)``.
    """
    X = check_square(X, name)
    scale = 1.0 + np.max(np.abs(X))
    if np.max(np.abs(X - X.T)) > SYMMETRY_RTOL * scale:
        raise NotSymmetricError(f"{name} is not symmetric")
    return 0.5 * (X + X.T)


def check_spd(X, name="X"):
    """Return ``X`` symmetrized, raising unless it is positive definite.

    Positive definiteness means ``min eig > 1e-12 * max eig``.
    """
    from .linalg import sym_eig

    X = check_symmetric(X, name)
    values = sym_eig(X).values
    if values[-1] <= 0 or values[-1] <= SPD_RTOL * values[0]:
        raise NotPositiveDefiniteError(
            f"{name} is not positive definite (eigenvalue range [{values[-1]:.3e}, {values[0]:.3e}])"
        )
    return X


def check_same_dim(*mats):
    dims = {np.shape(m) for m in mats}
    if len(dims) != 1:
        raise DimensionMismatchError(f"dimension mismatch: {sorted(dims)}")


def check_weights(weights, size):
    w = np.asarray(weights, dtype=float).reshape(-1)
    if w.shape[0] != size:
        raise DimensionMismatchError(f"expected {size} weights, got {w.shape[0]}")
    if np.any(~np.isfinite(w)) or np.any(w <= 0):
        raise ValueError("weights must be positive")
    if abs(w.sum() - 1.0) > WEIGHT_ATOL:
        raise ValueError(f"weights must sum to 1, got {w.sum()!r}")
    return w


def check_ordered_positive(v, name="v"):
    """Return ``v`` as a float vector sorted decreasingly; all entries must be > 0."""
    v = np.asarray(v, dtype=float).reshape(-1)
    if v.size == 0:
        raise ValueError(f"{name} must be non-empty")
    if not np.all(np.isfinite(v)) or np.any(v <= 0):
        raise ValueError(f"{name} must be strictly positive")
    return -np.sort(-v, kind="stable")

"""Dense symmetric / SPD kernel.

Every matrix function goes through :func:`sym_eig`, a cyclic Jacobi
eigensolver, so results are reproducible across BLAS builds.  Sizes are
desk-scale (``n <= 16`` is the design point, compound matrices go to 20).

Accuracy promises hold for condition numbers up to about ``1e12``; above
that, inputs are accepted but results carry no guarantee.
"""

from typing import Callable, NamedTuple, Union

import numba
import numpy as np

from ._validation import (
    DimensionMismatchError,
    check_same_dim,
    check_spd,
    check_symmetric,
)

JACOBI_RTOL = 1e-13
JACOBI_MAX_SWEEPS = 100
# past the norm test, keep rotating while an entry is large relative to its
# diagonal pair; this keeps small eigenvalues accurate to working precision
REL_FLOOR = 1e-16
ABS_FLOOR = 1e-20


class ConvergenceError(RuntimeError):
    """An iterative routine stopped before meeting its tolerance."""

    def __init__(self, message, residual):
        super().__init__(f"{message} (residual={residual:.3e})")
        self.residual = residual


class EigDecomposition(NamedTuple):
    values: np.ndarray
    basis: np.ndarray


@numba.njit(cache=True)
def _jacobi_kernel(S, rtol, max_sweeps):
    n = S.shape[0]
    a = S.copy()
    v = np.eye(n)
    scale = np.sqrt(np.sum(a * a))
    off = 0.0
    for sweep in range(max_sweeps + 1):
        off = 0.0
        significant = False
        for p in range(n):
            for q in range(p + 1, n):
                apq = abs(a[p, q])
                off += 2.0 * apq * apq
                if apq > REL_FLOOR * np.sqrt(abs(a[p, p] * a[q, q])) and apq > ABS_FLOOR * scale:
                    significant = True
        off = np.sqrt(off)
        if off <= rtol * scale and not significant:
            return np.diag(a).copy(), v, off, sweep
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return np.diag(a).copy(), v, off, -1


def _eigh(S):
    # unchecked fast path for internal callers; S must already be symmetric
    values, basis, off, sweeps = _jacobi_kernel(np.ascontiguousarray(S, dtype=float), JACOBI_RTOL, JACOBI_MAX_SWEEPS)
    if sweeps < 0:
        raise ConvergenceError("Jacobi eigensolver did not converge", off)
    order = np.argsort(-values, kind="stable")
    return values[order], basis[:, order]


def sym_eig(S) -> EigDecomposition:
    """Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Returns eigenvalues sorted decreasingly (multiplicities counted) and an
    orthogonal basis whose columns are the matching eigenvectors.  Ties keep
    the solver's column order.

    Raises
    ------
    ConvergenceError
        If the off-diagonal mass is still above ``1e-13 * ||S||_F`` after
        100 sweeps; ``.residual`` holds the final off-diagonal norm.
    """
    S = check_symmetric(S, "S")
    return EigDecomposition(*_eigh(S))


def _from_eig(values, basis):
    return (basis * values) @ basis.T


def _apply(S, f):
    values, basis = _eigh(S)
    out = _from_eig(f(values), basis)
    return 0.5 * (out + out.T)


_TAGS = {
    "log": np.log,
    "sqrt": np.sqrt,
    "invsqrt": lambda x: 1.0 / np.sqrt(x),
    "inv": lambda x: 1.0 / x,
}


def matrix_fn(A, f: Union[str, Callable]) -> np.ndarray:
    """Apply a scalar function to an SPD matrix through its eigenbasis.

    ``f`` is a tag (``"log"``, ``"sqrt"``, ``"invsqrt"``, ``"inv"``) or any
    vectorized callable defined on the positive reals.  See :func:`powm` for
    real powers and :func:`expm` for the inverse of ``log``.
    """
    A = check_spd(A, "A")
    func = _TAGS[f] if isinstance(f, str) else f
    return _apply(A, func)


def logm(A):
    return matrix_fn(A, "log")


def sqrtm(A):
    return matrix_fn(A, "sqrt")


def powm(A, p):
    """Real power ``A**p`` of an SPD matrix; SPD for every real ``p``."""
    A = check_spd(A, "A")
    return _apply(A, lambda x: x ** p)


def expm(S):
    """Matrix exponential of a symmetric matrix (an SPD matrix)."""
    S = check_symmetric(S, "S")
    return _apply(S, np.exp)


def _sqrt_pair(A):
    values, basis = _eigh(A)
    root = np.sqrt(values)
    return _from_eig(root, basis), _from_eig(1.0 / root, basis)


def _one_sided_log_eigs(A, B):
    _, inv_root = _sqrt_pair(A)
    M = inv_root @ B @ inv_root
    return np.log(_eigh(0.5 * (M + M.T))[0])


def _congruence_log_eigs(A, B):
    # eigenvalues of log(A^{-1/2} B A^{-1/2}), decreasing.  Positive logs are
    # read from this congruence and negative ones from the reversed one, where
    # they are large; this also makes the result exactly antisymmetric in (A, B).
    fwd = _one_sided_log_eigs(A, B)
    bwd = -_one_sided_log_eigs(B, A)[::-1]
    return np.where(fwd + bwd >= 0, fwd, bwd)


def geodesic(A, B, t):
    """Point ``A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}`` on the geodesic.

    ``t = 1/2`` gives the two-variable geometric mean ``A # B``.
    """
    A = check_spd(A, "A")
    B = check_spd(B, "B")
    check_same_dim(A, B)
    return _geodesic(A, B, float(t))


def _geodesic(A, B, t):
    root, inv_root = _sqrt_pair(A)
    M = inv_root @ B @ inv_root
    out = root @ _apply(0.5 * (M + M.T), lambda x: x ** t) @ root
    return 0.5 * (out + out.T)


def _check_pair(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"dimension mismatch: {a.shape} vs {b.shape}")
    if a.ndim == 1:
        if np.any(a <= 0) or np.any(b <= 0):
            raise ValueError("vector arguments must be strictly positive")
        return a, b
    return check_spd(a, "A"), check_spd(b, "B")


def _log_ratio(a, b):
    if a.ndim == 1:
        return np.log(b) - np.log(a)
    return _congruence_log_eigs(a, b)


def riemannian_distance(A, B) -> float:
    """Affine-invariant distance ``||log A^{-1/2} B A^{-1/2}||_2``.

    One-dimensional positive arrays are treated as diagonal matrices, so the
    same call gives ``||log a - log b||_2`` on the positive orthant.
    """
    A, B = _check_pair(A, B)
    return float(np.sqrt(np.sum(_log_ratio(A, B) ** 2)))


def thompson_distance(A, B) -> float:
    """Thompson metric ``max_i |log lambda_i(A^{-1/2} B A^{-1/2})|``.

    Positive vectors are handled through the diagonal embedding, giving
    ``max_i |log a_i - log b_i|``.
    """
    A, B = _check_pair(A, B)
    return float(np.max(np.abs(_log_ratio(A, B))))


def eigenvalue_map(A) -> np.ndarray:
    """Eigenvalues of an SPD matrix in decreasing order."""
    A = check_spd(A, "A")
    return _eigh(A)[0]


def loewner_min_eig(A, B) -> float:
    """Smallest eigenvalue of ``B - A``; nonnegative iff ``A <= B`` in Loewner order."""
    D = np.asarray(B, dtype=float) - np.asarray(A, dtype=float)
    return float(_eigh(0.5 * (D + D.T))[0][-1])

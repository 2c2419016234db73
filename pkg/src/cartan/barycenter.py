"""Cartan (Karcher) barycenters of finitely supported measures.

The solver targets the Karcher equation directly: it stops when
``||sum_j w_j log(X^{-1/2} A_j X^{-1/2})||_2`` falls below ``tol``.
"""

import itertools
from dataclasses import dataclass

import numpy as np

from ._validation import check_spd
from .linalg import ConvergenceError, _apply, _eigh, _from_eig, _sqrt_pair, eigenvalue_map
from .majorization import vector_geometric_mean
from .measures import DiscreteMeasure

KARCHER_TOL = 1e-11
KARCHER_MAX_ITER = 500
MAX_HALVINGS = 20
PRODUCT_CAP = 2000


@dataclass(frozen=True)
class KarcherResult:
    mean: np.ndarray
    residual_norm: float
    iterations: int


def _as_measure(mu):
    if isinstance(mu, DiscreteMeasure):
        return mu
    return DiscreteMeasure.uniform(mu)


def _sym(X):
    return 0.5 * (X + X.T)


def _gradient(root_inv, atoms, weights, with_step=False):
    # sum_j w_j log(X^{-1/2} A_j X^{-1/2}), plus the Richardson step 2 / sum_j w_j q(c_j)
    T = np.zeros_like(atoms[0])
    denom = 0.0
    for A, w in zip(atoms, weights):
        values, basis = _eigh(_sym(root_inv @ A @ root_inv))
        logs = np.log(values)
        T += w * _from_eig(logs, basis)
        spread = logs[0] - logs[-1]
        denom += w * (spread / np.tanh(0.5 * spread) if spread > 1e-8 else 2.0)
    T = _sym(T)
    return (T, 2.0 / denom) if with_step else T


def karcher_residual(X, mu) -> float:
    """Norm of the Karcher gradient ``sum_j w_j log(X^{-1/2} A_j X^{-1/2})`` at ``X``."""
    X = check_spd(X, "X")
    mu = _as_measure(mu)
    _, root_inv = _sqrt_pair(X)
    return float(np.linalg.norm(_gradient(root_inv, mu.atoms, mu.weights)))


def _log_euclidean(atoms, weights):
    L = sum(w * _apply(A, np.log) for A, w in zip(atoms, weights))
    return _apply(_sym(L), np.exp)


def log_euclidean_mean(mu) -> np.ndarray:
    """``exp(sum_j w_j log A_j)``, the limit of ``G(mu^s)^{1/s}`` as ``s -> 0``."""
    mu = _as_measure(mu)
    return _log_euclidean(mu.atoms, mu.weights)


def karcher_mean(mu, tol=KARCHER_TOL, max_iter=KARCHER_MAX_ITER) -> KarcherResult:
    """Weighted Karcher mean by damped fixed-point iteration.

    Starting from the log-Euclidean mean, each step moves to
    ``X^{1/2} exp(t * grad) X^{1/2}``.  The trial step is the Richardson
    step ``t = 2 / sum_j w_j q_j`` with ``q_j = s_j / tanh(s_j / 2)`` and
    ``s_j`` the log-spread of ``X^{-1/2} A_j X^{-1/2}`` (so ``t <= 1``, and
    ``t = 1`` for commuting data); it is halved, at most 20 times, whenever
    the residual does not decrease.

    Parameters
    ----------
    mu : DiscreteMeasure or array of shape (m, n, n)
        Matrix-valued measure; a bare array is read as uniform weights.
    tol : float
        Target for the residual norm.
    max_iter : int
        Iteration cap.

    Raises
    ------
    ConvergenceError
        If the residual is still above ``tol`` after ``max_iter`` steps or no
        damped step reduces it.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    mu = _as_measure(mu)
    if not mu.is_matrix:
        raise ValueError("karcher_mean needs matrix atoms; use vector_geometric_mean for vectors")
    atoms, weights = mu.atoms, mu.weights
    if mu.size == 1:
        return KarcherResult(atoms[0].copy(), 0.0, 0)

    X = _log_euclidean(atoms, weights)
    root, root_inv = _sqrt_pair(X)
    grad, step = _gradient(root_inv, atoms, weights, with_step=True)
    res = np.linalg.norm(grad)
    it = 0
    while res > tol:
        if it >= max_iter:
            raise ConvergenceError(f"Karcher iteration hit max_iter={max_iter}", res)
        t = step
        for _ in range(MAX_HALVINGS + 1):
            X_new = _sym(root @ _apply(t * grad, np.exp) @ root)
            root_new, root_inv_new = _sqrt_pair(X_new)
            grad_new, step_new = _gradient(root_inv_new, atoms, weights, with_step=True)
            res_new = np.linalg.norm(grad_new)
            if res_new < res:
                break
            t *= 0.5
        else:
            raise ConvergenceError("Karcher step halving failed to reduce the residual", res)
        X, root, root_inv, grad, step, res = X_new, root_new, root_inv_new, grad_new, step_new, res_new
        it += 1
    return KarcherResult(X, float(res), it)


def cartan_mean(mu, tol=KARCHER_TOL, max_iter=KARCHER_MAX_ITER):
    """Barycenter of a matrix or vector measure.

    Vector measures use the closed form on the positive orthant.
    """
    mu = _as_measure(mu)
    if mu.is_matrix:
        return karcher_mean(mu, tol, max_iter).mean
    return vector_geometric_mean(mu.atoms, mu.weights)


def geometric_integral(samples, tol=KARCHER_TOL):
    """Karcher mean of the uniform empirical measure on ``samples``."""
    return karcher_mean(DiscreteMeasure.uniform(samples), tol).mean


def arithmetic_mean(mu) -> np.ndarray:
    mu = _as_measure(mu)
    return np.tensordot(mu.weights, mu.atoms, axes=1)


def harmonic_mean(mu) -> np.ndarray:
    mu = _as_measure(mu)
    inv = sum(w * _apply(A, lambda x: 1.0 / x) for A, w in zip(mu.atoms, mu.weights))
    return _apply(_sym(inv), lambda x: 1.0 / x)


def power_pushforward(mu, r) -> DiscreteMeasure:
    """Push ``mu`` forward by ``A -> A**r``."""
    if not 0 < r <= 1:
        raise ValueError("r must lie in (0, 1]")
    mu = _as_measure(mu)
    if r == 1:
        return mu
    return mu.map(lambda A: _apply(A, lambda x: x ** r))


def pushforward_eigen(mu, spectrum=None) -> DiscreteMeasure:
    """Push ``mu`` forward by the eigenvalue map, or by ``spectrum`` if given.

    Pass ``spectrum=extended_symplectic_map`` for the symplectic push-forward.
    """
    mu = _as_measure(mu)
    f = spectrum or (lambda A: _eigh(A)[0])
    return mu.map(f)


def product_barycenter_measure(mus, cap=PRODUCT_CAP, tol=KARCHER_TOL) -> DiscreteMeasure:
    """Push-forward of the product measure ``mu_1 x ... x mu_m`` by the barycenter map.

    Enumerates the full product support: atom ``(i_1, ..., i_m)`` is the
    uniform barycenter of ``A_{1 i_1}, ..., A_{m i_m}`` with weight
    ``prod_j w_{j i_j}``.  Raises ``ValueError`` when the support size
    exceeds ``cap``.
    """
    mus = [_as_measure(mu) for mu in mus]
    if not mus:
        raise ValueError("need at least one measure")
    if len({mu.is_matrix for mu in mus}) != 1 or len({mu.atoms.shape[1:] for mu in mus}) != 1:
        raise ValueError("measures must share atom type and dimension")
    total = int(np.prod([mu.size for mu in mus]))
    if total > cap:
        raise ValueError(f"product support has {total} atoms, cap is {cap}")
    if len(mus) == 1:
        return mus[0]
    atoms, weights = [], []
    for idx in itertools.product(*(range(mu.size) for mu in mus)):
        tuple_atoms = np.stack([mu.atoms[i] for mu, i in zip(mus, idx)])
        uniform = np.full(len(mus), 1.0 / len(mus))
        if mus[0].is_matrix:
            atoms.append(karcher_mean(DiscreteMeasure(tuple_atoms, uniform, validate=False), tol).mean)
        else:
            atoms.append(vector_geometric_mean(tuple_atoms, uniform))
        weights.append(np.prod([mu.weights[i] for mu, i in zip(mus, idx)]))
    weights = np.asarray(weights)
    return DiscreteMeasure(np.stack(atoms), weights / weights.sum(), validate=False)


def eigenvalues_of_mean(mu, tol=KARCHER_TOL):
    return eigenvalue_map(karcher_mean(mu, tol).mean)

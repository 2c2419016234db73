"""Symplectic spectra of ``2n x 2n`` SPD matrices.

Block convention: coordinates are ``(q_1..q_n, p_1..p_n)`` and
``J = [[0, I], [-I, 0]]``.  Compound matrices index their rows and columns
by ``k``-subsets of ``range(N)`` in lexicographic order (the order of
``itertools.combinations``).
"""

import itertools
from dataclasses import dataclass

import numpy as np

from ._validation import DimensionMismatchError, check_spd
from .linalg import _apply, _eigh, _sqrt_pair

PAIR_RTOL = 1e-7
WILLIAMSON_TOL = 1e-8


class SymplecticPairingError(RuntimeError):
    """Eigenvalues that must come in equal pairs did not."""


@dataclass(frozen=True)
class SymplecticSpectrum:
    half_dim: int
    d: np.ndarray
    extended: np.ndarray


@dataclass(frozen=True)
class WilliamsonDecomposition:
    D: np.ndarray
    M: np.ndarray


def standard_J(n: int) -> np.ndarray:
    if n < 1:
        raise ValueError("n must be a positive integer")
    I = np.eye(n)
    Z = np.zeros((n, n))
    return np.block([[Z, I], [-I, Z]])


def _check_even(A):
    A = check_spd(A, "A")
    if A.shape[0] % 2:
        raise DimensionMismatchError(f"symplectic routines need even dimension, got {A.shape[0]}")
    return A, A.shape[0] // 2


def _product_eigs(A, J):
    # eigen-decomposition of A^{1/2} J^T A J A^{1/2} = S^T S, ascending.  Its
    # eigenvalues are taken as squared singular values of S from [[0, S], [S^T, 0]],
    # which avoids squaring the condition number.
    root, _ = _sqrt_pair(A)
    S = root @ J @ root
    N = S.shape[0]
    K = np.zeros((2 * N, 2 * N))
    K[:N, N:] = S
    K[N:, :N] = S.T
    values, vectors = _eigh(K)
    top = np.argsort(values, kind="stable")[N:]
    basis = vectors[N:, top]
    basis /= np.linalg.norm(basis, axis=0)
    return values[top] ** 2, basis, S


def _pair_up(values):
    lo, hi = values[0::2], values[1::2]
    gap = (hi - lo) / np.maximum(hi, np.finfo(float).tiny)
    if np.any(gap > PAIR_RTOL):
        i = int(np.argmax(gap))
        raise SymplecticPairingError(
            f"eigenvalues {lo[i]:.17g} and {hi[i]:.17g} should coincide (relative gap {gap[i]:.2e})"
        )
    return np.sqrt(np.sqrt(lo * hi))


def symplectic_eigenvalues(A) -> SymplecticSpectrum:
    """Symplectic eigenvalues from ``lambda^{1/2}(A^{1/2} J^T A J A^{1/2})``.

    The product matrix has every eigenvalue doubled; consecutive ascending
    eigenvalues are paired and the geometric mean of each pair is ``d_i^2``.

    Raises
    ------
    SymplecticPairingError
        If a pair differs by more than ``1e-7`` relative.
    """
    A, n = _check_even(A)
    values, _, _ = _product_eigs(A, standard_J(n))
    d = _pair_up(values)
    return SymplecticSpectrum(n, d, np.repeat(d[::-1], 2))


def extended_symplectic_map(A) -> np.ndarray:
    """The ``2n``-vector ``(d_n, d_n, ..., d_1, d_1)``."""
    return symplectic_eigenvalues(A).extended


def williamson(A) -> WilliamsonDecomposition:
    """Williamson normal form ``A = M^T diag(D, D) M`` with ``M`` symplectic.

    Builds an orthogonal ``Q`` with ``Q S Q^T = [[0, D], [-D, 0]]`` for the
    skew matrix ``S = A^{1/2} J A^{1/2}``, then sets
    ``M = diag(D, D)^{-1/2} Q A^{1/2}``.  Both invariants are verified before
    returning.
    """
    A, n = _check_even(A)
    J = standard_J(n)
    values, basis, S = _product_eigs(A, J)
    _pair_up(values)
    root, _ = _sqrt_pair(A)

    # eigenspaces of S^T S are S-invariant; split each into (v, -Sv/|Sv|) planes
    clusters, start = [], 0
    for i in range(1, 2 * n + 1):
        if i == 2 * n or values[i] - values[i - 1] > PAIR_RTOL * values[i]:
            clusters.append(basis[:, start:i])
            start = i
    pairs = []
    for block in clusters:
        if block.shape[1] % 2:
            raise SymplecticPairingError("odd-sized eigenspace in the symplectic product matrix")
        chosen = []
        for col in block.T:
            v = col.copy()
            for u in chosen:
                v -= (u @ v) * u
            norm = np.linalg.norm(v)
            if norm < 0.5:
                continue
            v /= norm
            Sv = S @ v
            d = np.linalg.norm(Sv)
            w = -Sv / d
            for u in chosen:
                w -= (u @ w) * u
            w /= np.linalg.norm(w)
            chosen += [v, w]
            pairs.append((d, v, w))
            if len(chosen) == block.shape[1]:
                break
    pairs.sort(key=lambda p: p[0])
    D = np.array([p[0] for p in pairs])
    Q = np.vstack([np.array([p[1] for p in pairs]), np.array([p[2] for p in pairs])])
    M = (Q @ root) / np.sqrt(np.concatenate([D, D]))[:, None]

    sym_err = np.max(np.abs(M.T @ J @ M - J))
    rec = M.T @ (np.concatenate([D, D])[:, None] * M)
    rec_err = np.linalg.norm(rec - A) / np.linalg.norm(A)
    if sym_err > WILLIAMSON_TOL or rec_err > WILLIAMSON_TOL:
        raise SymplecticPairingError(
            f"Williamson reconstruction failed (symplectic error {sym_err:.2e}, reconstruction error {rec_err:.2e})"
        )
    return WilliamsonDecomposition(D, M)


def top_symplectic_bound_holds(A, alpha) -> bool:
    """Whether ``J^T A J <= alpha^2 A^{-1}``, equivalently ``d_max(A) <= alpha``."""
    A, n = _check_even(A)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    J = standard_J(n)
    G = alpha ** 2 * _apply(A, lambda x: 1.0 / x) - J.T @ A @ J
    return bool(_eigh(0.5 * (G + G.T))[0][-1] >= -1e-10 * alpha ** 2)


def compound_matrix(A, k: int) -> np.ndarray:
    """``k``-th compound: the matrix of all ``k x k`` minors of ``A``.

    Entry ``(I, K)`` is ``det A[I, K]`` where ``I`` and ``K`` run over
    ``k``-subsets of the indices in lexicographic order.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {A.shape}")
    N = A.shape[0]
    if not 1 <= k <= N:
        raise ValueError(f"k must lie in 1..{N}, got {k}")
    subsets = np.array(list(itertools.combinations(range(N), k)))
    blocks = A[subsets[:, None, :, None], subsets[None, :, None, :]]
    return np.linalg.det(blocks)


def symplectic_prefix_product(A, k: int) -> float:
    """``prod_{i<=k}`` of the extended symplectic eigenvalues via compound matrices.

    Returns the square root of the largest eigenvalue of
    ``C^{1/2} J_k^T C J_k C^{1/2}`` with ``C`` the ``k``-th compound of ``A``
    and ``J_k`` that of ``J``.
    """
    A, n = _check_even(A)
    C = compound_matrix(A, k)
    Jk = compound_matrix(standard_J(n), k)
    root, _ = _sqrt_pair(0.5 * (C + C.T))
    P = root @ Jk.T @ C @ Jk @ root
    return float(np.sqrt(_eigh(0.5 * (P + P.T))[0][0]))

"""Seeded instance generators.

Each trial draws from its own Philox stream keyed by ``(seed, trial)``,
so a failing trial can be replayed without running the ones before it.
"""

import numpy as np

from ..linalg import expm
from ..measures import DiscreteMeasure

MAX_COND_CAP = 1e12


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), int(trial)])))


def random_orthogonal(n, rng):
    Q, R = np.linalg.qr(rng.standard_normal((n, n)))
    return Q * np.sign(np.diag(R))


def random_spd(n, cond_cap, rng):
    """``Q diag(lam) Q^T`` with ``log lam`` uniform on ``[-log sqrt(cap), log sqrt(cap)]``."""
    if not 1 <= cond_cap <= MAX_COND_CAP:
        raise ValueError(f"cond_cap must lie in [1, {MAX_COND_CAP:g}]")
    half = 0.5 * np.log(cond_cap)
    lam = np.exp(rng.uniform(-half, half, n))
    Q = random_orthogonal(n, rng)
    A = (Q * lam) @ Q.T
    return 0.5 * (A + A.T)


def random_psd(n, rng, scale=1.0):
    """Random PSD matrix of random rank."""
    rank = int(rng.integers(1, n + 1))
    G = rng.standard_normal((n, rank)) * scale / np.sqrt(n)
    return G @ G.T


def random_symmetric(n, rng, scale=1.0):
    G = rng.standard_normal((n, n)) * scale
    return 0.5 * (G + G.T)


def random_weights(m, mode, rng):
    if mode == "uniform":
        return np.full(m, 1.0 / m)
    if mode == "random":
        w = rng.uniform(0.1, 1.0, m)
        return w / w.sum()
    raise ValueError(f"unknown weight mode {mode!r}")


def random_measure(n, m, cond_cap, rng, weights="uniform"):
    atoms = np.stack([random_spd(n, cond_cap, rng) for _ in range(m)])
    return DiscreteMeasure(atoms, random_weights(m, weights, rng), validate=False)


def random_symplectic(n, rng):
    """Product of 3 to 6 elementary symplectic factors.

    Factors are shears ``[[I, P], [0, I]]``, ``[[I, 0], [Q, I]]`` with small
    symmetric ``P``, ``Q`` and ``diag(L, L^{-T})`` with ``L`` near ``I``.
    """
    I = np.eye(n)
    Z = np.zeros((n, n))
    S = np.eye(2 * n)
    for _ in range(int(rng.integers(3, 7))):
        kind = int(rng.integers(3))
        if kind == 0:
            F = np.block([[I, random_symmetric(n, rng, 0.4)], [Z, I]])
        elif kind == 1:
            F = np.block([[I, Z], [random_symmetric(n, rng, 0.4), I]])
        else:
            L = I + 0.25 * rng.standard_normal((n, n))
            while abs(np.linalg.det(L)) < 0.2:
                L = I + 0.25 * rng.standard_normal((n, n))
            F = np.block([[L, Z], [Z, np.linalg.inv(L).T]])
        S = S @ F
    return S


def spd_ball(n, radius, rng):
    """SPD matrix ``exp(X)`` with ``||X||_2 <= radius``, i.e. within ``radius`` of ``I``."""
    X = random_symmetric(n, rng)
    X *= radius * rng.uniform(0.2, 1.0) / np.linalg.norm(X)
    return expm(X)

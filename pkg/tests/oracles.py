"""Independent reference computations used by several test modules."""

import itertools
from fractions import Fraction

import numpy as np


def lagrange_fn_2x2(M, f):
    """f(M) for a symmetric 2x2 matrix from its scalar eigenvalues only.

    Uses the interpolation identity f(M) = a M + b I, valid when the two
    eigenvalues differ.
    """
    tr, det = M[0, 0] + M[1, 1], M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    disc = np.sqrt(max(tr * tr / 4 - det, 0.0))
    l1, l2 = tr / 2 + disc, tr / 2 - disc
    a = (f(l1) - f(l2)) / (l1 - l2)
    b = (l1 * f(l2) - l2 * f(l1)) / (l1 - l2)
    return a * M + b * np.eye(2)


def geodesic_oracle_2x2(A, B, t):
    root = lagrange_fn_2x2(A, np.sqrt)
    inv_root = lagrange_fn_2x2(A, lambda x: 1 / np.sqrt(x))
    M = inv_root @ B @ inv_root
    return root @ lagrange_fn_2x2(0.5 * (M + M.T), lambda x: x ** t) @ root


def brute_force_transport(C, supply, demand):
    """Optimal transport value by enumerating permutations of a refined problem.

    ``supply`` and ``demand`` are sequences of Fractions sharing a common
    denominator N.  Splitting each atom into N * w copies turns the problem
    into an N x N assignment whose optimum sits at a permutation (Birkhoff).
    """
    N = int(np.lcm.reduce([Fraction(w).denominator for w in list(supply) + list(demand)]))
    rows = [i for i, w in enumerate(supply) for _ in range(int(w * N))]
    cols = [j for j, w in enumerate(demand) for _ in range(int(w * N))]
    assert len(rows) == len(cols) == N
    big = np.asarray(C)[np.ix_(rows, cols)]
    best = min(big[np.arange(N), list(p)].sum() for p in itertools.permutations(range(N)))
    return best / N


def exhaustive_transport(C, supply, demand):
    """Exact optimum of the common-denominator assignment problem by exhaustive DP.

    The refined N x N assignment has many identical copies; enumerating
    assignments up to that symmetry is a DP over how many copies of each
    atom on the smaller side are still free.  Every assignment is covered,
    so the result is the true optimum without any LP machinery.
    """
    C = np.asarray(C, dtype=float)
    supply, demand = list(supply), list(demand)
    if len(supply) < len(demand):
        C, supply, demand = C.T, demand, supply
    N = int(np.lcm.reduce([Fraction(w).denominator for w in supply + demand]))
    big = [i for i, w in enumerate(supply) for _ in range(int(w * N))]
    caps = tuple(int(w * N) for w in demand)
    assert len(big) == sum(caps) == N
    layer = {caps: 0.0}
    for i in big:
        nxt = {}
        for state, cost in layer.items():
            for j, free in enumerate(state):
                if free:
                    key = state[:j] + (free - 1,) + state[j + 1 :]
                    value = cost + C[i, j]
                    if value < nxt.get(key, np.inf):
                        nxt[key] = value
        layer = nxt
    return layer[(0,) * len(caps)] / N

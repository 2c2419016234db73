"""Exact Wasserstein-1 distances between finitely supported measures.

The general path is a transportation simplex (northwest-corner start,
potentials, Bland's rule).  Two uniform measures of equal size short-circuit
to an assignment problem.
"""

from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .linalg import _eigh, riemannian_distance, thompson_distance
from .measures import DiscreteMeasure

GROUNDS = ("riemannian", "thompson", "log_l2", "log_linf")


@dataclass(frozen=True)
class TransportPlan:
    mass: np.ndarray

    @property
    def rows(self):
        return self.mass.shape[0]

    @property
    def cols(self):
        return self.mass.shape[1]


def _log(x):
    if x.ndim == 1:
        return np.log(x)
    values, basis = _eigh(x)
    return (basis * np.log(values)) @ basis.T


def _ground(tag, is_matrix):
    if tag == "riemannian":
        return riemannian_distance
    if tag == "thompson":
        return thompson_distance
    if tag == "log_l2":
        return lambda a, b: float(np.linalg.norm(_log(a) - _log(b)))
    if tag == "log_linf":
        if is_matrix:
            return lambda a, b: float(np.max(np.abs(_eigh(_log(a) - _log(b))[0])))
        return lambda a, b: float(np.max(np.abs(np.log(a) - np.log(b))))
    raise ValueError(f"unknown ground metric {tag!r}; expected one of {GROUNDS}")


def cost_matrix(mu, nu, ground="riemannian"):
    if mu.is_matrix != nu.is_matrix or mu.atoms.shape[1:] != nu.atoms.shape[1:]:
        raise ValueError("measures must share atom type and dimension")
    dist = _ground(ground, mu.is_matrix)
    return np.array([[dist(a, b) for b in nu.atoms] for a in mu.atoms])


def _tree_path(basis_cells, m, start_row, end_col):
    # path of basis cells from row node start_row to column node end_col
    adj = {}
    for i, j in basis_cells:
        adj.setdefault(("r", i), []).append(("c", j))
        adj.setdefault(("c", j), []).append(("r", i))
    parent = {("r", start_row): None}
    queue = deque([("r", start_row)])
    while queue:
        node = queue.popleft()
        if node == ("c", end_col):
            break
        for nxt in adj.get(node, ()):
            if nxt not in parent:
                parent[nxt] = node
                queue.append(nxt)
    cells = []
    node = ("c", end_col)
    while parent[node] is not None:
        prev = parent[node]
        cells.append((prev[1], node[1]) if prev[0] == "r" else (node[1], prev[1]))
        node = prev
    return cells  # ordered from the end_col side back to start_row


def _potentials(C, basis_cells, m, n):
    u = np.full(m, np.nan)
    v = np.full(n, np.nan)
    u[0] = 0.0
    by_row, by_col = {}, {}
    for i, j in basis_cells:
        by_row.setdefault(i, []).append(j)
        by_col.setdefault(j, []).append(i)
    queue = deque([("r", 0)])
    while queue:
        kind, k = queue.popleft()
        if kind == "r":
            for j in by_row.get(k, ()):
                if np.isnan(v[j]):
                    v[j] = C[k, j] - u[k]
                    queue.append(("c", j))
        else:
            for i in by_col.get(k, ()):
                if np.isnan(u[i]):
                    u[i] = C[i, k] - v[k]
                    queue.append(("r", i))
    return u, v


def transportation_simplex(C, supply, demand, max_iter=100_000):
    """Minimize ``sum x_ij C_ij`` over plans with the given marginals.

    Returns the optimal mass matrix.  Pivoting follows Bland's rule: the
    entering cell is the first cell (row-major) with negative reduced cost,
    the leaving cell the first among the minimizers of the ratio test.
    """
    C = np.asarray(C, dtype=float)
    m, n = C.shape
    x = np.zeros((m, n))
    s = np.array(supply, dtype=float)
    d = np.array(demand, dtype=float)
    basis = []
    i = j = 0
    while True:
        q = min(s[i], d[j])
        x[i, j] = q
        basis.append((i, j))
        s[i] -= q
        d[j] -= q
        if i == m - 1 and j == n - 1:
            break
        if i == m - 1:
            j += 1
        elif j == n - 1:
            i += 1
        elif s[i] == 0.0:
            i += 1
        else:
            j += 1

    eps = 1e-12 * (1.0 + np.max(np.abs(C)))
    for _ in range(max_iter):
        u, v = _potentials(C, basis, m, n)
        reduced = C - u[:, None] - v[None, :]
        in_basis = np.zeros((m, n), dtype=bool)
        for cell in basis:
            in_basis[cell] = True
        candidates = np.flatnonzero((reduced < -eps) & ~in_basis)
        if candidates.size == 0:
            return x
        ei, ej = divmod(int(candidates[0]), n)
        path = _tree_path(basis, m, ei, ej)
        minus = path[0::2]
        plus = path[1::2]
        theta = min(x[c] for c in minus)
        leaving = min(c for c in minus if x[c] == theta)
        for c in minus:
            x[c] -= theta
        for c in plus:
            x[c] += theta
        x[ei, ej] += theta
        x[leaving] = 0.0
        basis.remove(leaving)
        basis.append((ei, ej))
    raise RuntimeError("transportation simplex did not terminate")


def _is_uniform(w):
    return np.allclose(w, 1.0 / w.size, rtol=0.0, atol=1e-12)


def wasserstein1(mu, nu, ground="riemannian", method="auto"):
    """Wasserstein-1 distance with the given ground metric.

    Parameters
    ----------
    mu, nu : DiscreteMeasure
        Measures with atoms of the same type and dimension.
    ground : str
        One of ``riemannian``, ``thompson``, ``log_l2``, ``log_linf``.  On
        vector atoms ``riemannian`` equals ``log_l2`` and ``thompson``
        equals ``log_linf``.
    method : str
        ``auto`` uses the assignment solver for equal-size uniform measures
        and the transportation simplex otherwise; ``simplex`` and
        ``assignment`` force a path.

    Returns
    -------
    value : float
    plan : TransportPlan
    """
    if not isinstance(mu, DiscreteMeasure) or not isinstance(nu, DiscreteMeasure):
        raise TypeError("wasserstein1 expects DiscreteMeasure arguments")
    C = cost_matrix(mu, nu, ground)
    return _solve(C, mu.weights, nu.weights, method)


def _solve(C, a, b, method="auto"):
    square_uniform = C.shape[0] == C.shape[1] and _is_uniform(a) and _is_uniform(b)
    if method == "assignment" or (method == "auto" and square_uniform):
        if not square_uniform:
            raise ValueError("assignment path needs two uniform measures of equal size")
        rows, cols = linear_sum_assignment(C)
        mass = np.zeros_like(C)
        mass[rows, cols] = 1.0 / C.shape[0]
    elif method in ("auto", "simplex"):
        mass = transportation_simplex(C, a, b)
    else:
        raise ValueError(f"unknown method {method!r}")
    return float(np.sum(mass * C)), TransportPlan(mass)

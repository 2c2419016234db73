import numpy as np
import pytest
from hypothesis import strategies as st

from cartan.verify.random import random_orthogonal

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def spd_from(log_eigs, seed):
    """SPD matrix with the given log-eigenvalues in a seeded random basis."""
    log_eigs = np.asarray(log_eigs, dtype=float)
    Q = random_orthogonal(log_eigs.size, np.random.default_rng(seed))
    A = (Q * np.exp(log_eigs)) @ Q.T
    return 0.5 * (A + A.T)


@st.composite
def spd_matrices(draw, n=None, max_n=5, spread=4.0):
    """Hypothesis strategy for SPD matrices with condition number up to exp(2 * spread)."""
    if n is None:
        n = draw(st.integers(1, max_n))
    logs = draw(st.lists(st.floats(-spread, spread), min_size=n, max_size=n))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return spd_from(logs, seed)


@st.composite
def spd_pairs(draw, max_n=5, spread=4.0):
    n = draw(st.integers(1, max_n))
    return draw(spd_matrices(n=n, spread=spread)), draw(spd_matrices(n=n, spread=spread))


@st.composite
def spd_triples(draw, max_n=4, spread=4.0):
    n = draw(st.integers(1, max_n))
    return tuple(draw(spd_matrices(n=n, spread=spread)) for _ in range(3))


def positive_vectors(n, lo=-5.0, hi=5.0):
    return st.lists(st.floats(lo, hi), min_size=n, max_size=n).map(lambda x: np.exp(np.asarray(x)))

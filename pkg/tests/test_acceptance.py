"""Acceptance criteria, each at its stated trial count and tolerance.

Every test appends one PASS/FAIL line that the terminal summary prints at
the end of the run (see ``conftest.py``).
"""

import json
import time
from fractions import Fraction

import numpy as np
import pytest

from cartan import DiscreteMeasure, cost_matrix, wasserstein1
from cartan.verify import InstanceConfig, run_suite
from cartan.verify.cli import main
from cartan.verify.random import random_spd, trial_rng

from .conftest import ACCEPTANCE_LINES
from .oracles import exhaustive_transport

pytestmark = pytest.mark.acceptance


def record(number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def suite_detail(report):
    return (
        f"{report.suite} {report.passes}/{report.trials} passed, worst margin {report.worst_margin:.3e}, "
        f"{report.wall_time:.1f}s"
    )


def run_criterion(number, runs, extra=""):
    reports = [run_suite(name, InstanceConfig(trials=trials, seed=seed, **kw)) for name, trials, seed, kw in runs]
    ok = all(r.ok and r.passes == r.trials for r in reports)
    detail = "; ".join(suite_detail(r) for r in reports)
    record(number, ok, detail + extra)
    for r in reports:
        assert r.passes == r.trials, r.failures[:5]


def failing_labels(report, *needles):
    return [f for f in report.failures if any(n in f["note"] for n in needles)]


def test_criterion_01_closed_form_barycenters():
    # two-atom weights (1-t, t) against A #_t B and commuting families against entrywise means
    report = run_suite("karcher-props", InstanceConfig(trials=500, seed=101))
    bad = failing_labels(report, "two atoms", "commuting", "numerical failure")
    record(1, not bad and report.passes == report.trials, suite_detail(report))
    assert not bad and report.passes == report.trials, report.failures[:5]


def test_criterion_02_karcher_residual_and_determinant():
    run_criterion(2, [("karcher-props", 300, 102, dict(n=6, m=8))])


def test_criterion_03_metric_comparison():
    run_criterion(3, [("metric-comp", 500, 103, dict(n=8, tol=1e-10))])


def test_criterion_04_eigenvalue_contraction_emi_lidskii():
    run_criterion(4, [("emi-lidskii", 500, 104, dict(tol=1e-10)), ("eig-contract", 500, 104, dict(tol=1e-10))])


def test_criterion_05_eigenvalue_chain():
    run_criterion(5, [("thm-main-eig", 300, 105, dict(n=5, m=6, r_grid=(0.25, 0.5, 0.75), tol=1e-8))])


def test_criterion_06_lie_trotter():
    run_criterion(6, [("lie-trotter", 100, 106, {})])


def test_criterion_07_williamson_consistency():
    run_criterion(7, [("williamson", 300, 107, dict(n=3))])


def test_criterion_08_symplectic_monotone_and_lipschitz():
    run_criterion(8, [("symp-lipschitz", 300, 108, dict(n=3, tol=1e-10))])


def test_criterion_09_top_symplectic_criterion():
    run_criterion(9, [("criterion-f43", 200, 109, dict(n=3))])


def test_criterion_10_compound_prefix_identity():
    run_criterion(10, [("compound-prefix", 100, 110, dict(n=3, tol=1e-7))])


def test_criterion_11_weighted_symplectic_chain():
    run_criterion(11, [("lemma-4-4", 300, 111, dict(r_grid=(0.25, 0.5, 1.0), weights="random", tol=1e-8))])


def test_criterion_12_barycenter_contraction():
    run_criterion(12, [("contraction", 200, 112, dict(m=3, m_min=3, tol=1e-8))])


def test_criterion_13_product_measure_chains():
    run_criterion(
        13,
        [
            ("thm-5-1", 50, 113, dict(n=2, measures=3, support=3, tol=1e-8)),
            ("thm-5-2", 50, 113, dict(n=2, n_min=1, measures=3, support=3, tol=1e-8)),
        ],
    )


def test_criterion_14_eigenvalue_barycenter_closed_form():
    run_criterion(14, [("prop-3-2", 100, 114, {})])


def _composition(N, k, rng):
    cuts = np.sort(rng.choice(np.arange(1, N), size=k - 1, replace=False))
    return [Fraction(int(x), N) for x in np.diff(np.concatenate([[0], cuts, [N]]))]


def test_criterion_15_transport_correctness():
    start = time.perf_counter()
    shapes = [(k1, k2) for k1 in range(1, 37) for k2 in range(1, 37) if k1 * k2 <= 36]
    worst_brute, instances = 0.0, 0
    for idx, (k1, k2) in enumerate(shapes):
        rng = trial_rng(115, idx)
        for ground in ("riemannian", "thompson"):
            N = int(rng.integers(max(k1, k2), max(k1, k2) + 5))
            a, b = _composition(N, k1, rng), _composition(N, k2, rng)
            mu = DiscreteMeasure(np.stack([random_spd(3, 1e4, rng) for _ in range(k1)]), np.array(a, float), validate=False)
            nu = DiscreteMeasure(np.stack([random_spd(3, 1e4, rng) for _ in range(k2)]), np.array(b, float), validate=False)
            value, _ = wasserstein1(mu, nu, ground, method="simplex")
            C = cost_matrix(mu, nu, ground)
            worst_brute = max(worst_brute, abs(value - exhaustive_transport(C, a, b)))
            instances += 1

    worst_assign, pairs = 0.0, 0
    for trial in range(200):
        rng = trial_rng(1150, trial)
        k = int(rng.integers(1, 13))
        mu = DiscreteMeasure.uniform(np.stack([random_spd(3, 1e4, rng) for _ in range(k)]), validate=False)
        nu = DiscreteMeasure.uniform(np.stack([random_spd(3, 1e4, rng) for _ in range(k)]), validate=False)
        for ground in ("riemannian", "thompson"):
            fast = wasserstein1(mu, nu, ground, method="assignment")[0]
            slow = wasserstein1(mu, nu, ground, method="simplex")[0]
            worst_assign = max(worst_assign, abs(fast - slow))
            pairs += 1

    ok = worst_brute <= 1e-8 and worst_assign <= 1e-10
    record(
        15,
        ok,
        f"{instances} simplex instances over {len(shapes)} shapes, max |simplex - exhaustive| {worst_brute:.1e}; "
        f"{pairs} assignment/simplex pairs, max gap {worst_assign:.1e}; {time.perf_counter() - start:.1f}s",
    )
    assert worst_brute <= 1e-8
    assert worst_assign <= 1e-10


def test_criterion_16_conjecture_search_reports_only(tmp_path):
    out = tmp_path / "conjectures.json"
    code = main(["--suite", "conjectures-abc", "--trials", "100", "--seed", "116", "--out", str(out)])
    report = json.loads(out.read_text())
    negatives = [f for f in report["failures"] if f["margin"] is not None and f["margin"] < 0]
    record(
        16,
        code == 0,
        f"exit {code}; {report['passes']}/{report['trials']} trials without a violation, "
        f"{len(negatives)} negative margins (worst {report['worst_margin']:.3e}) reported, not asserted",
    )
    assert code == 0

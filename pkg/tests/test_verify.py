import csv
import json

import numpy as np
import pytest

from cartan.verify import SUITES, InstanceConfig, run_suite
from cartan.verify.cli import main
from cartan.verify.random import random_spd, random_symplectic, random_weights, spd_ball, trial_rng
from cartan import riemannian_distance, standard_J

REPORT_KEYS = {"suite", "anchor", "report_only", "trials", "passes", "worst_margin", "failures", "config", "wall_time"}


# ---------------------------------------------------------------- generators


def test_random_spd_unit_cap_is_identity():
    np.testing.assert_allclose(random_spd(4, 1.0, trial_rng(0, 0)), np.eye(4), atol=1e-14)


def test_random_spd_is_deterministic_and_spd():
    A = random_spd(5, 1e4, trial_rng(3, 11))
    np.testing.assert_array_equal(A, random_spd(5, 1e4, trial_rng(3, 11)))
    w = np.linalg.eigvalsh(A)
    assert w.min() > 0 and w.max() / w.min() <= 1e4 * (1 + 1e-9)


def test_random_spd_rejects_bad_caps():
    for cap in (0.5, 1e13):
        with pytest.raises(ValueError):
            random_spd(3, cap, trial_rng(0, 0))


def test_trial_streams_are_independent():
    assert trial_rng(1, 2).random() != trial_rng(1, 3).random()
    assert trial_rng(1, 2).random() != trial_rng(2, 2).random()


def test_other_generators():
    rng = trial_rng(0, 0)
    S = random_symplectic(3, rng)
    J = standard_J(3)
    assert np.max(np.abs(S.T @ J @ S - J)) <= 1e-12
    np.testing.assert_allclose(random_weights(4, "random", rng).sum(), 1.0)
    with pytest.raises(ValueError):
        random_weights(3, "zipf", rng)
    assert riemannian_distance(spd_ball(3, 0.5, rng), np.eye(3)) <= 0.5 + 1e-12


# ---------------------------------------------------------------- run_suite


def test_metric_comp_example():
    report = run_suite("metric-comp", InstanceConfig(trials=100, n=4, seed=7))
    assert report.passes == 100 and not report.failures and report.ok


def test_small_product_measure_example():
    report = run_suite("thm-5-1", InstanceConfig(trials=10, n=2, measures=2, support=2, seed=0))
    assert report.passes == 10


def test_report_only_suite_is_ok_regardless_of_margins():
    report = run_suite("conjectures-abc", InstanceConfig(trials=10, seed=1))
    assert report.report_only and report.ok


def test_report_invariants_and_determinism():
    cfg = InstanceConfig(trials=12, seed=5)
    a = run_suite("thm-main-symp", cfg)
    b = run_suite("thm-main-symp", cfg, jobs=2)
    ja, jb = a.to_json(), b.to_json()
    ja.pop("wall_time"), jb.pop("wall_time")
    assert ja == jb
    assert a.passes + len(a.failures) == a.trials


def test_failures_are_recorded_with_seed_and_margin():
    report = run_suite("metric-comp", InstanceConfig(trials=5, seed=0, tol=-10.0))
    assert report.passes == 0 and len(report.failures) == 5 and not report.ok
    assert report.worst_margin == min(f["margin"] for f in report.failures)
    assert all(f["seed"] == 0 and "note" in f for f in report.failures)


def test_unknown_suite_and_bad_config():
    with pytest.raises(KeyError):
        run_suite("no-such-suite")
    with pytest.raises(ValueError):
        run_suite("metric-comp", InstanceConfig(cond_cap=0.5))
    with pytest.raises(ValueError):
        run_suite("thm-main-eig", InstanceConfig(r_grid=(0.0,)))


def test_every_suite_has_an_anchor_and_runs():
    for name, suite in SUITES.items():
        assert suite.anchor
        report = run_suite(name, InstanceConfig(trials=2, seed=9))
        assert report.anchor == suite.anchor and report.trials == 2


def test_emit_instances(tmp_path):
    run_suite("contraction", InstanceConfig(trials=2), emit_dir=tmp_path)
    files = sorted(p.name for p in tmp_path.iterdir())
    assert files == ["contraction-0-0.json", "contraction-0-1.json"]
    obj = json.loads((tmp_path / files[0]).read_text())
    assert {"mu", "nu", "suite", "seed", "trial"} <= set(obj)


# ---------------------------------------------------------------- CLI


def test_cli_single_suite_json_and_csv(tmp_path, capsys):
    out, table = tmp_path / "r.json", tmp_path / "r.csv"
    code = main(["--suite", "williamson", "--trials", "6", "--n", "2", "--seed", "4", "--out", str(out), "--csv", str(table)])
    assert code == 0
    report = json.loads(out.read_text())
    assert REPORT_KEYS <= set(report) and report["passes"] == 6
    assert report["config"]["n"] == 2 and report["config"]["seed"] == 4
    rows = list(csv.reader(table.open()))
    assert rows[0] == ["suite", "seed", "trial", "margin", "pass"] and len(rows) == 7
    assert "[PASS] williamson" in capsys.readouterr().err


def test_cli_all_writes_a_list(tmp_path):
    out = tmp_path / "all.json"
    assert main(["--suite", "all", "--trials", "1", "--out", str(out)]) == 0
    reports = json.loads(out.read_text())
    assert [r["suite"] for r in reports] == list(SUITES)


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["--suite", "metric-comp", "--trials", "3", "--tol", "-10", "--out", str(tmp_path / "x.json")]) == 1
    assert main(["--suite", "bogus"]) == 2
    assert main([]) == 2
    assert main(["--suite", "metric-comp", "--trials", "0"]) == 2
    assert main(["--suite", "metric-comp", "--r", "0.5,2"]) == 2
    assert main(["--suite", "metric-comp", "--cond-cap", "1e13"]) == 2
    assert main(["--list"]) == 0
    assert "conjectures-abc (report-only)" in capsys.readouterr().out


def test_cli_report_only_exit_zero(tmp_path):
    assert main(["--suite", "conjectures-abc", "--trials", "20", "--seed", "1", "--out", str(tmp_path / "c.json")]) == 0

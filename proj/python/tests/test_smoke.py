import pathlib

import pytest

import snn

FIXTURES = pathlib.Path(__file__).resolve().parents[2] / "tests" / "fixtures"

TWO_QUERY = {
    "schema": "snn-instance/1",
    "space": {"kind": "euclidean", "dim": 1},
    "labels": [[0], [10]],
    "queries": [[1], [9]],
    "edges": [[0, 1]],
}


def test_exact_solve_matches_oracle():
    # Same label for both queries costs 1 + 9 = 10; splitting costs 1 + 1 + 10.
    solved = snn.solve(TWO_QUERY, stage2="exact")
    assert solved["total"] == pytest.approx(10.0)
    assert snn.oracle(TWO_QUERY)["total"] == pytest.approx(solved["total"])


def test_rplus_reports_orientation():
    r = snn.rplus(TWO_QUERY)
    assert r["r"] == 1
    assert len(r["owner"]) == 1
    assert r["total"] == pytest.approx(12.0)


def test_gap_is_one_when_pruning_keeps_the_optimum():
    g = snn.gap(TWO_QUERY)
    assert g["alpha"] == pytest.approx(1.0)


def test_lower_bound_instance_shape():
    inst = snn.lower_bound_instance(4, d=3, mult=2, seed=1)
    assert len(inst["labels"]) == 8
    assert len(inst["queries"]) == 4
    assert sum(e[2] for e in inst["edges"]) == 12
    assert snn.gap(inst, method="elimination")["alpha"] >= 1.0


def test_cost_of_explicit_labels():
    c = snn.cost(TWO_QUERY, [0, 1])
    assert c["nn_cost"] == pytest.approx(2.0)
    assert c["pw_cost"] == pytest.approx(10.0)


def test_errors_map_to_python_exceptions():
    with pytest.raises(snn.IoError):
        snn.denoise(FIXTURES / "missing.ppm", runs=1)
    with pytest.raises(snn.GuardExceeded):
        snn.oracle(snn.lower_bound_instance(16, seed=1), guard=10.0)


def test_denoise_report_on_cartoon():
    report = snn.denoise(FIXTURES / "cartoon64.ppm", runs=2)
    assert report["schema"] == "snn-denoise-report/1"
    assert len(report["full"]["values"]) == 2
    assert 0.5 < report["empirical_gap"] < 2.0

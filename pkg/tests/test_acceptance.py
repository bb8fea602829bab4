"""
End-to-end convergence checks at benchmark scale. Run with `pytest -m slow`.
"""
import numpy as np
import pytest

from bench import BenchConfig, MseTable, fit_loglog_slope, run_benchmark
from estimators import Method
from nestex import main

pytestmark = pytest.mark.slow


def mean_estimate(table: MseTable, method: Method, m: int) -> float:
    return float(np.mean([r.estimate for r in table.rows if r.method == method and r.m == m and r.status == "ok"]))


def decreasing_up_to_one_inversion(values: list[float]) -> bool:
    inversions = sum(1 for a, b in zip(values, values[1:]) if b >= a)
    return inversions <= 1


@pytest.fixture(scope="module")
def eig_toy_table(tmp_path_factory) -> MseTable:
    cfg = BenchConfig(
        problem="eig-toy", methods=["post-strat", "nmc"], m_grid=[8, 16, 32, 64],
        replications=100, base_seed=0, output_dir=tmp_path_factory.mktemp("eig"),
    )
    return run_benchmark(cfg)


@pytest.fixture(scope="module")
def evsi_simple_table(tmp_path_factory) -> MseTable:
    cfg = BenchConfig(
        problem="evsi-simple", methods=["post-strat", "post-strat-reg", "nmc"], m_grid=[2, 3, 4, 5],
        replications=100, base_seed=0, output_dir=tmp_path_factory.mktemp("simple"),
    )
    return run_benchmark(cfg)


def test_eig_toy_consistency(eig_toy_table):
    assert mean_estimate(eig_toy_table, Method.POST_STRAT, 64) == pytest.approx(-1.16390, abs=0.02)
    mses = [s.mse for s in eig_toy_table.summary_for(Method.POST_STRAT)]
    assert decreasing_up_to_one_inversion(mses)


def test_eig_toy_rates(eig_toy_table):
    assert fit_loglog_slope(eig_toy_table, Method.POST_STRAT) <= -0.35
    assert fit_loglog_slope(eig_toy_table, Method.NMC) <= -0.35


def test_evsi_simple_consistency(evsi_simple_table):
    for method in (Method.POST_STRAT, Method.POST_STRAT_REG):
        assert mean_estimate(evsi_simple_table, method, 5) == pytest.approx(0.48860, abs=0.03)
        assert decreasing_up_to_one_inversion([s.mse for s in evsi_simple_table.summary_for(method)])


def test_evsi_simple_beats_nested_monte_carlo(evsi_simple_table):
    strat = evsi_simple_table.summary_for(Method.POST_STRAT)[-1]
    nmc = evsi_simple_table.summary_for(Method.NMC)[-1]
    assert strat.n_total == nmc.n_total == 15625
    assert strat.mse <= nmc.mse + strat.stderr


def test_evsi_medical_soft_target(tmp_path):
    cfg = BenchConfig(
        problem="evsi-medical", methods=["post-strat"], m_grid=[5],
        replications=50, base_seed=0, output_dir=tmp_path,
    )
    table = run_benchmark(cfg)
    assert mean_estimate(table, Method.POST_STRAT, 5) == pytest.approx(1031.0, rel=0.10)


def test_cli_benchmark_independent_of_threads(tmp_path):
    args = ["benchmark", "--problem", "eig-toy", "--methods", "post-strat,post-strat-reg,nmc",
            "--m-grid", "4,8,16", "--reps", "20", "--seed", "11"]
    assert main(args + ["--threads", "1", "--out", str(tmp_path / "one")]) == 0
    assert main(args + ["--threads", "8", "--out", str(tmp_path / "eight")]) == 0
    assert (tmp_path / "one" / "raw.csv").read_bytes() == (tmp_path / "eight" / "raw.csv").read_bytes()

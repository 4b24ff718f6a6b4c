import numpy as np
import pytest

import spinline as sl
from spinline import benchmarks as bm
from spinline.disorder import (
    export_param_stats_csv,
    export_robustness_csv,
    param_statistics,
    sample_chain,
    werner_robustness,
)
from spinline.hamiltonian import ChainSpec


@pytest.fixture(scope="module")
def base20():
    ref = bm.TUNED_CHAINS[20]
    return ChainSpec(n_nodes=20, delta1=ref["delta1"], delta2=ref["delta2"])


def test_sample_chain_zero_epsilon(base20, rng):
    out = sample_chain(base20, 0.0, rng)
    assert np.all(out.bulk == 1.0)


def test_sample_chain_range(base20):
    rng = np.random.default_rng(0)
    for _ in range(20):
        out = sample_chain(base20, 0.05, rng)
        assert np.all(out.bulk >= 0.95) and np.all(out.bulk <= 1.05)
        assert out.delta1 == base20.delta1 and out.delta2 == base20.delta2


def test_sample_chain_deterministic(base20):
    a = sample_chain(base20, 0.05, np.random.default_rng(42))
    b = sample_chain(base20, 0.05, np.random.default_rng(42))
    assert np.all(a.bulk == b.bulk)


def test_param_statistics_zero_epsilon(base20, tuned20_params):
    study = param_statistics(base20, tuned20_params.t0, 0.0, n_chains=3, seed=9)
    for key, s in study.stats.items():
        assert s.std == 0.0
        assert s.mean == s.unperturbed
        assert study.shift(key) == 0.0


def test_param_statistics_spread_grows_with_epsilon(base20, tuned20_params):
    t0 = tuned20_params.t0
    lo = param_statistics(base20, t0, 0.025, n_chains=40, seed=5)
    hi = param_statistics(base20, t0, 0.05, n_chains=40, seed=5)
    keys = list(lo.stats)
    grew = sum(hi.stats[k].std > lo.stats[k].std for k in keys)
    assert grew >= 0.9 * len(keys)


def test_family_i_means_shift_down(base20, tuned20_params):
    study = param_statistics(base20, tuned20_params.t0, 0.05, n_chains=40, seed=5)
    fam1 = [k for k, s in study.stats.items() if s.family == "I"]
    assert all(
        abs(study.stats[k].mean) < abs(study.stats[k].unperturbed) for k in fam1
    )


def test_study_determinism(base20, tuned20_params):
    a = param_statistics(base20, tuned20_params.t0, 0.05, n_chains=6, seed=77)
    b = param_statistics(base20, tuned20_params.t0, 0.05, n_chains=6, seed=77)
    assert all(
        a.stats[k].mean == b.stats[k].mean and a.stats[k].std == b.stats[k].std
        for k in a.stats
    )


@pytest.fixture(scope="module")
def controls(tuned20_params):
    return {
        p: sl.solve_werner(tuned20_params, p).controls
        for p in (0.0, 0.4, 0.8)
    }


def test_robustness_zero_epsilon_matches_unperturbed(base20, tuned20_params, controls):
    points = werner_robustness(base20, tuned20_params.t0, controls, 0.0,
                               n_chains=3, seed=1)
    for pt in points:
        rho = sl.assemble_rho(tuned20_params, controls[pt.p])
        exact = sl.discrepancy(rho, sl.werner_target(pt.p))
        assert pt.mean == pytest.approx(exact, abs=1e-14)
        assert pt.std == 0.0


def test_robustness_grows_with_epsilon(base20, tuned20_params, controls):
    t0 = tuned20_params.t0
    lo = werner_robustness(base20, t0, controls, 0.025, n_chains=30, seed=2)
    hi = werner_robustness(base20, t0, controls, 0.05, n_chains=30, seed=2)
    for a, b in zip(lo, hi):
        assert b.mean > a.mean


def test_csv_exports(tmp_path, base20, tuned20_params, controls):
    study = param_statistics(base20, tuned20_params.t0, 0.05, n_chains=4, seed=3)
    p1 = tmp_path / "stats.csv"
    export_param_stats_csv(study, p1, header_lines=["cfg"])
    lines = p1.read_text().splitlines()
    assert lines[0] == "# cfg"
    assert len(lines) == 2 + 170
    points = werner_robustness(base20, tuned20_params.t0, controls, 0.05,
                               n_chains=4, seed=3)
    p2 = tmp_path / "rob.csv"
    export_robustness_csv(points, p2)
    lines = p2.read_text().splitlines()
    assert lines[0] == "p,mean_delta,std_delta,sem_delta"
    assert len(lines) == 1 + len(points)

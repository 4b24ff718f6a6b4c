import numpy as np
import pytest

import spinline as sl
from spinline import benchmarks as bm
from spinline.basis import SenderState
from spinline.errors import InfeasibleTargetError
from spinline.inverse import TargetState, discrepancy, werner_target, zero_family_iii


def test_werner_matrix_structure():
    m = werner_target(0.6).matrix
    assert m[0, 0] == m[3, 3] == pytest.approx(0.1)
    assert m[1, 1] == m[2, 2] == pytest.approx(0.4)
    assert m[1, 2] == m[2, 1] == pytest.approx(-0.3)
    assert np.trace(m) == pytest.approx(1.0)
    TargetState(m).validate()


def test_werner_parameter_range():
    with pytest.raises(ValueError):
        werner_target(1.2)


def test_discrepancy_basics():
    a = np.diag([1.0, 0, 0, 0]).astype(complex)
    b = np.diag([0, 1.0, 0, 0]).astype(complex)
    assert discrepancy(a, a) == 0.0
    assert discrepancy(a, b) == pytest.approx(np.sqrt(2.0))
    with pytest.raises(ValueError):
        discrepancy(a, np.zeros((4, 4)))


def test_nonphysical_target_rejected():
    bad = np.diag([0.5, 0.5, 0.5, -0.5]).astype(complex)
    with pytest.raises(ValueError):
        TargetState(bad).validate()
    TargetState(bad).validate(allow_nonphysical=True)


@pytest.mark.parametrize("p", [0.0, 0.4, 0.8])
def test_solve_werner(tuned20_params, p):
    sol = sl.solve_werner(tuned20_params, p)
    assert sol.residual < 1e-10
    assert sol.discrepancy < 1e-10
    # controls live on the pair sector only and are real
    assert sol.controls.a0 == 0.0
    assert np.all(sol.controls.a_single == 0.0)
    assert np.max(np.abs(sol.controls.a_double.imag)) == 0.0
    rho = sl.assemble_rho(tuned20_params, sol.controls)
    assert discrepancy(rho, werner_target(p)) <= 10 * bm.WERNER_FULL_DISCREPANCY[p]


def test_solve_werner_infeasible(tuned20_params):
    with pytest.raises(InfeasibleTargetError) as err:
        sl.solve_werner(tuned20_params, 0.9)
    assert err.value.best_residual > 1e-8


def test_solution_self_consistency(tuned20_params):
    sol = sl.solve_werner(tuned20_params, 0.5)
    rho = sl.assemble_rho(tuned20_params, sol.controls).rho
    worst = np.max(np.abs(rho - werner_target(0.5).matrix))
    assert worst <= sol.residual + 1e-12


def test_zeroed_family_iii_effect(tuned20_params):
    truncated = zero_family_iii(tuned20_params)
    cls = sl.classify_families(truncated)
    lo, hi = cls.magnitude_ranges["III"]
    assert hi == 0.0
    sol = sl.solve_werner(truncated, 0.8)
    assert sol.residual < 1e-10
    rho = sl.assemble_rho(tuned20_params, sol.controls)
    delta = discrepancy(rho, werner_target(0.8))
    assert 5e-3 <= delta <= 2e-2


def test_solve_general_vacuum_target(tuned20_params):
    # many controls create diag(1,0,0,0): the vacuum, but also states whose
    # excitations sit entirely in the environment at t0; only the receiver
    # match is contractual
    target = TargetState(np.diag([1.0, 0, 0, 0]).astype(complex))
    sol = sl.solve_general(tuned20_params, target, n_starts=8)
    assert sol.residual < 1e-8
    assert sol.discrepancy < 1e-8


def test_solve_general_self_target(tuned20_params, rng):
    state = SenderState.random(rng)
    target = TargetState(sl.assemble_rho(tuned20_params, state).rho)
    sol = sl.solve_general(tuned20_params, target, n_starts=16)
    assert sol.discrepancy < 1e-8


def test_solve_general_werner(tuned20_params):
    sol = sl.solve_general(tuned20_params, werner_target(0.2), n_starts=16)
    assert sol.discrepancy <= 1.532e-5


def test_feasibility_scan_quick(tuned20_params):
    boundary, res = sl.feasibility_scan(
        tuned20_params, np.arange(0.85, 0.921, 0.01), refine_tol=2e-3
    )
    assert boundary == pytest.approx(bm.WERNER_FEASIBLE_MAX, abs=0.002)
    assert res <= 2e-3

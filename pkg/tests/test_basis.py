import numpy as np
import pytest

from spinline.basis import (
    SenderState,
    build_basis,
    sender_pairs,
    validate_sender_state,
)
from spinline.errors import ChainLengthError, NormalizationError


@pytest.mark.parametrize("n,dim", [(4, 11), (7, 29), (20, 211), (60, 1831)])
def test_dimension_formula(n, dim):
    basis = build_basis(n)
    assert basis.dimension == dim
    assert basis.dimension == 1 + n + n * (n - 1) // 2


def test_pair_order_n4():
    basis = build_basis(4)
    assert list(basis.pairs) == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]


@pytest.mark.parametrize("n", [4, 5, 9, 16, 33])
def test_pair_index_round_trip(n):
    basis = build_basis(n)
    for idx, pair in enumerate(basis.pairs):
        assert basis.index_of(*pair) == idx
        assert basis.pair_of(idx) == pair
    # strictly increasing under lexicographic pair order
    assert list(basis.pairs) == sorted(basis.pairs)


def test_too_short_chain_rejected():
    with pytest.raises(ChainLengthError):
        build_basis(3)


def test_sender_pairs_default():
    assert sender_pairs() == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]


def test_vacuum_and_single_pair_states_validate():
    validate_sender_state(SenderState.vacuum())
    a2 = np.zeros(6, complex)
    a2[0] = 1.0
    validate_sender_state(SenderState.from_double(a2))


def test_norm_violation_reports_deviation():
    a1 = np.zeros(4, complex)
    a1[0] = 0.8
    state = SenderState(0.8, a1, np.zeros(6, complex))
    with pytest.raises(NormalizationError) as err:
        validate_sender_state(state)
    assert err.value.deviation == pytest.approx(0.28, abs=1e-12)


def test_complex_a0_rejected():
    state = SenderState(complex(0.5, 0.5), np.zeros(4, complex), np.zeros(6, complex))
    with pytest.raises(ValueError, match="a0 must be real"):
        validate_sender_state(state)


def test_wrong_amplitude_count_rejected():
    with pytest.raises(ValueError):
        SenderState(1.0, np.zeros(3, complex), np.zeros(6, complex))


def test_real_parameter_count(rng):
    # one real a0, complex singles and doubles: 21 real scalars, one constraint
    state = SenderState.random(rng)
    n_real = 1 + 2 * state.a_single.size + 2 * state.a_double.size
    assert n_real == 21
    validate_sender_state(state)


def test_random_states_normalized(rng):
    for _ in range(25):
        state = SenderState.random(rng)
        assert state.norm_squared == pytest.approx(1.0, abs=1e-12)

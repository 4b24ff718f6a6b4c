import json

import numpy as np
import pytest

from spinline.basis import build_basis
from spinline.errors import ChainLengthError, SizeMismatchError
from spinline.hamiltonian import ChainSpec, apply_disorder, build_blocks


def uniform_blocks(n):
    return build_blocks(ChainSpec.uniform(n), build_basis(n))


def test_uniform_n4_single_block():
    h1 = uniform_blocks(4).h1
    off = np.diag(h1, 1)
    assert np.allclose(off, 0.5)
    assert np.all(np.diag(h1) == 0.0)


def test_pair_block_selection_rule():
    blocks = uniform_blocks(4)
    basis = blocks.basis
    h2 = blocks.h2
    # one excitation hops 2 -> 3 across bond (2,3)
    assert h2[basis.index_of(1, 2), basis.index_of(1, 3)] == pytest.approx(0.5)
    # both indices differ: forbidden
    assert h2[basis.index_of(1, 2), basis.index_of(3, 4)] == 0.0


def test_tuned_boundary_entries():
    spec = ChainSpec(n_nodes=20, delta1=0.550, delta2=0.817)
    h1 = build_blocks(spec, build_basis(20), two_excitation=False).h1
    assert h1[0, 1] == pytest.approx(0.275)
    assert h1[1, 2] == pytest.approx(0.4085)


def test_blocks_exactly_symmetric(rng):
    spec = ChainSpec(n_nodes=9, delta1=0.7, delta2=1.1,
                     bulk=rng.uniform(0.5, 1.5, 4))
    blocks = build_blocks(spec, build_basis(9))
    assert np.max(np.abs(blocks.h1 - blocks.h1.T)) == 0.0
    assert np.max(np.abs(blocks.h2 - blocks.h2.T)) == 0.0


def test_pair_block_row_sparsity():
    h2 = uniform_blocks(12).h2
    assert np.max(np.count_nonzero(h2, axis=1)) <= 4


@pytest.mark.parametrize("n", [7, 8])
def test_free_fermion_spectrum_identity(n, rng):
    # two-excitation energies are pairwise sums of one-excitation energies
    spec = ChainSpec(n_nodes=n, delta1=rng.uniform(0.3, 1.2),
                     delta2=rng.uniform(0.3, 1.2),
                     bulk=rng.uniform(0.5, 1.5, n - 5))
    blocks = build_blocks(spec, build_basis(n))
    e1 = np.linalg.eigvalsh(blocks.h1)
    e2 = np.sort(np.linalg.eigvalsh(blocks.h2))
    sums = np.sort([e1[a] + e1[b] for a in range(n) for b in range(a + 1, n)])
    assert np.max(np.abs(e2 - sums)) < 1e-10


def test_coupling_layout():
    spec = ChainSpec(n_nodes=8, delta1=0.5, delta2=0.8, bulk=np.array([1.1, 1.2, 1.3]))
    assert np.allclose(spec.couplings(), [0.5, 0.8, 1.1, 1.2, 1.3, 0.8, 0.5])


def test_boundary_profile_needs_seven_nodes():
    with pytest.raises(ChainLengthError):
        ChainSpec(n_nodes=6, delta1=0.5, delta2=0.8, bulk=np.array([1.0]))
    ChainSpec.uniform(5)  # uniform short chains are fine


def test_spec_basis_mismatch():
    with pytest.raises(SizeMismatchError):
        build_blocks(ChainSpec.uniform(8), build_basis(9))


def test_nonpositive_couplings_rejected():
    with pytest.raises(ValueError):
        ChainSpec(n_nodes=8, delta1=-0.1, delta2=0.8)


def test_apply_disorder_zero_epsilon():
    spec = ChainSpec(n_nodes=10, delta1=0.6, delta2=0.9)
    out = apply_disorder(spec, 0.0, np.ones(5))
    assert np.all(out.bulk == 1.0)
    assert out.delta1 == spec.delta1 and out.delta2 == spec.delta2


def test_apply_disorder_formula():
    spec = ChainSpec.uniform(10)
    out = apply_disorder(spec, 0.05, np.ones(5))
    assert np.allclose(out.bulk, 1.05)
    deltas = np.zeros(5)
    deltas[0] = -1.0
    out = apply_disorder(spec, 0.025, deltas)
    assert out.bulk[0] == pytest.approx(0.975)
    assert np.all(out.bulk[1:] == 1.0)


def test_apply_disorder_rejects_bad_input():
    spec = ChainSpec.uniform(10)
    with pytest.raises(ValueError):
        apply_disorder(spec, 0.05, np.full(5, 1.5))
    with pytest.raises(SizeMismatchError):
        apply_disorder(spec, 0.05, np.ones(4))


def test_json_round_trip():
    spec = ChainSpec(n_nodes=9, delta1=0.55, delta2=0.82,
                     bulk=np.array([1.0, 0.98, 1.02, 1.0]))
    text = spec.to_json()
    loaded = ChainSpec.from_json(text)
    assert loaded.n_nodes == 9
    assert loaded.delta1 == 0.55 and loaded.delta2 == 0.82
    assert np.allclose(loaded.bulk, spec.bulk)
    assert json.loads(text)["n"] == 9

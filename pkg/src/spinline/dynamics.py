"""Spectral time evolution of the excitation blocks.

Everything is computed from one dense eigendecomposition per block: the
propagator at any time t is V exp(-i L t) V^T, so a single diagonalization
serves every registration time and every sender state.  The transfer
matrices are kept complex; their phases carry physical content.
"""

import csv
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import SizeMismatchError, SpinlineError

RECONSTRUCTION_TOL = 1e-10


@dataclass(frozen=True)
class SpectralData:
    """Eigendecompositions of the Hamiltonian blocks."""

    basis: object
    spec: object
    evals1: np.ndarray = field(repr=False)
    evecs1: np.ndarray = field(repr=False)
    evals2: np.ndarray = field(repr=False, default=None)
    evecs2: np.ndarray = field(repr=False, default=None)

    @property
    def has_two_excitation(self):
        return self.evals2 is not None


@dataclass(frozen=True)
class TransferAmplitudes:
    """Propagator matrix elements between excitation basis states at time t.

    ``p1[i-1, k-1]`` is the amplitude <i|exp(-iHt)|k>; ``p2`` is the
    analogous matrix on the ordered-pair basis.
    """

    t: float
    p1: np.ndarray = field(repr=False)
    p2: np.ndarray = field(repr=False)
    basis: object = None

    def single(self, i, k):
        return self.p1[i - 1, k - 1]

    def double(self, ij, nm):
        return self.p2[self.basis.index_of(*ij), self.basis.index_of(*nm)]


@dataclass(frozen=True)
class EvolvedState:
    """Amplitudes of an evolved sender state on the full chain."""

    f0: float
    f_single: np.ndarray = field(repr=False)
    f_double: np.ndarray = field(repr=False)

    @property
    def norm_squared(self):
        return (
            abs(self.f0) ** 2
            + float(np.sum(np.abs(self.f_single) ** 2))
            + float(np.sum(np.abs(self.f_double) ** 2))
        )


def diagonalize(blocks, check=True):
    """Eigendecompose the Hamiltonian blocks.

    With ``check`` the reconstruction V L V^T is compared to the input to
    1e-10, which guards against a silently failed eigensolve.
    """
    evals1, evecs1 = np.linalg.eigh(blocks.h1)
    evals2 = evecs2 = None
    if blocks.h2 is not None:
        evals2, evecs2 = np.linalg.eigh(blocks.h2)
    if check:
        for evals, evecs, h in ((evals1, evecs1, blocks.h1), (evals2, evecs2, blocks.h2)):
            if evals is None:
                continue
            err = np.max(np.abs((evecs * evals) @ evecs.T - h))
            if err > RECONSTRUCTION_TOL:
                raise SpinlineError(f"eigendecomposition reconstruction error {err:.3e}")
    return SpectralData(
        basis=blocks.basis, spec=blocks.spec,
        evals1=evals1, evecs1=evecs1, evals2=evals2, evecs2=evecs2,
    )


def propagators(spectral, t, basis=None):
    """Full transfer-amplitude matrices p1, p2 at time t."""
    if not spectral.has_two_excitation:
        raise SpinlineError("two-excitation block was not diagonalized")
    if t < 0:
        warnings.warn(f"propagating backwards in time (t = {t})", stacklevel=2)
    p1 = (spectral.evecs1 * np.exp(-1j * spectral.evals1 * t)) @ spectral.evecs1.T
    p2 = (spectral.evecs2 * np.exp(-1j * spectral.evals2 * t)) @ spectral.evecs2.T
    return TransferAmplitudes(t=float(t), p1=p1, p2=p2, basis=basis or spectral.basis)


def propagator_columns(spectral, t, pair_columns):
    """Selected columns of p2 at time t, cheaper than the full matrix.

    ``pair_columns`` are indices into the pair basis.  Returns an array of
    shape (n_pairs, len(pair_columns)).
    """
    if not spectral.has_two_excitation:
        raise SpinlineError("two-excitation block was not diagonalized")
    V = spectral.evecs2
    phase = np.exp(-1j * spectral.evals2 * t)
    return V @ (phase[:, None] * V.T[:, pair_columns])


def single_transfer_series(spectral, i, k, times):
    """|<i|exp(-iHt)|k>| on a grid of times (1-based node indices)."""
    w = spectral.evecs1[i - 1] * spectral.evecs1[k - 1]
    return np.abs(np.exp(-1j * np.outer(np.asarray(times), spectral.evals1)) @ w)


def embed_sender(state, basis):
    """Embed sender amplitudes into full-chain single and pair vectors."""
    from .basis import sender_pairs

    if state.n_sender > basis.n_nodes - 2:
        raise SizeMismatchError(
            f"sender of {state.n_sender} nodes overlaps the receiver on an "
            f"{basis.n_nodes}-node chain"
        )
    a1 = np.zeros(basis.n_nodes, complex)
    a1[: state.n_sender] = state.a_single
    a2 = np.zeros(basis.n_pairs, complex)
    for s, pair in enumerate(sender_pairs(state.n_sender)):
        a2[basis.index_of(*pair)] = state.a_double[s]
    return a1, a2


def evolve(state, amps):
    """Evolve a sender state with precomputed transfer amplitudes."""
    basis = amps.basis
    if amps.p1.shape[0] != basis.n_nodes:
        raise SizeMismatchError("amplitudes and basis disagree on chain length")
    a1, a2 = embed_sender(state, basis)
    return EvolvedState(
        f0=state.a0,
        f_single=amps.p1 @ a1,
        f_double=amps.p2 @ a2,
    )


def dump_amplitudes_csv(amps, path):
    """Write p1 and p2 as rows (row_label, col_label, re, im)."""
    basis = amps.basis
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["row_label", "col_label", "re", "im"])
        n = amps.p1.shape[0]
        for i in range(n):
            for k in range(n):
                v = amps.p1[i, k]
                w.writerow([i + 1, k + 1, f"{v.real:.12e}", f"{v.imag:.12e}"])
        for i, pi in enumerate(basis.pairs):
            for k, pk in enumerate(basis.pairs):
                v = amps.p2[i, k]
                w.writerow([f"({pi[0]},{pi[1]})", f"({pk[0]},{pk[1]})",
                            f"{v.real:.12e}", f"{v.imag:.12e}"])

"""Excitation basis of an N-node chain and the sender's control state.

The dynamics conserves the number of excitations, so everything happens in
the direct sum of the zero-, one- and two-excitation sectors: the vacuum
|0>, the states |k> with node k excited (k = 1..N) and the states |nm> with
nodes n < m excited.  Total dimension 1 + N + N(N-1)/2.

Node indices are 1-based in every public interface; two-excitation states
are ordered lexicographically in (n, m).
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ChainLengthError, NormalizationError

NORM_TOL = 1e-12


def pair_list(n_nodes):
    """Ordered pairs (n, m) with 1 <= n < m <= n_nodes, lexicographic."""
    return [(n, m) for n in range(1, n_nodes) for m in range(n + 1, n_nodes + 1)]


@dataclass(frozen=True)
class ExcitationBasis:
    """Index maps for the two-excitation subspace of an N-node chain."""

    n_nodes: int
    pairs: tuple = field(repr=False)
    pair_index: dict = field(repr=False)

    @property
    def n_pairs(self):
        return len(self.pairs)

    @property
    def dimension(self):
        """1 + N + C(N,2), the size of the conserved subspace."""
        return 1 + self.n_nodes + self.n_pairs

    def index_of(self, n, m):
        """Index of the pair state |nm|, n < m, within the pair sector."""
        return self.pair_index[(n, m)]

    def pair_of(self, idx):
        """Inverse of :meth:`index_of`."""
        return self.pairs[idx]


def build_basis(n_nodes):
    """Enumerate the excitation basis of an ``n_nodes``-node chain.

    Raises
    ------
    ChainLengthError
        If ``n_nodes < 4`` (a four-node sender must fit on the chain).
    """
    if n_nodes < 4:
        raise ChainLengthError(f"chain needs at least 4 nodes, got {n_nodes}")
    pairs = tuple(pair_list(n_nodes))
    pair_index = {p: i for i, p in enumerate(pairs)}
    return ExcitationBasis(n_nodes=n_nodes, pairs=pairs, pair_index=pair_index)


def sender_pairs(n_sender=4):
    """Pair states available to a sender occupying nodes 1..n_sender."""
    return pair_list(n_sender)


@dataclass
class SenderState:
    """Control parameters of the sender's pure initial state.

    ``a0`` (real), the single-excitation amplitudes ``a_single[i-1]`` for
    node i and the double-excitation amplitudes ``a_double`` ordered like
    :func:`sender_pairs`.  The squared magnitudes must sum to one.
    """

    a0: float
    a_single: np.ndarray
    a_double: np.ndarray
    n_sender: int = 4

    def __post_init__(self):
        self.a_single = np.asarray(self.a_single, dtype=complex)
        self.a_double = np.asarray(self.a_double, dtype=complex)
        n_pair = self.n_sender * (self.n_sender - 1) // 2
        if self.a_single.shape != (self.n_sender,) or self.a_double.shape != (n_pair,):
            raise ValueError(
                f"expected {self.n_sender} single and {n_pair} double amplitudes, "
                f"got {self.a_single.shape} and {self.a_double.shape}"
            )

    @property
    def norm_squared(self):
        return (
            abs(self.a0) ** 2
            + float(np.sum(np.abs(self.a_single) ** 2))
            + float(np.sum(np.abs(self.a_double) ** 2))
        )

    @classmethod
    def vacuum(cls, n_sender=4):
        n_pair = n_sender * (n_sender - 1) // 2
        return cls(1.0, np.zeros(n_sender, complex), np.zeros(n_pair, complex), n_sender)

    @classmethod
    def from_double(cls, a_double, n_sender=4):
        """State with support only on pair states (a0 = a_i = 0)."""
        a_double = np.asarray(a_double, dtype=complex)
        return cls(0.0, np.zeros(n_sender, complex), a_double, n_sender)

    @classmethod
    def random(cls, rng, n_sender=4):
        """Haar-like random normalized sender state (a0 real positive)."""
        n_pair = n_sender * (n_sender - 1) // 2
        v = rng.standard_normal(1 + 2 * (n_sender + n_pair))
        v /= np.linalg.norm(v)
        a0 = abs(v[0])
        single = v[1 : 1 + n_sender] + 1j * v[1 + n_sender : 1 + 2 * n_sender]
        rest = v[1 + 2 * n_sender :]
        double = rest[:n_pair] + 1j * rest[n_pair:]
        return cls(a0, single, double, n_sender)


def validate_sender_state(state):
    """Check normalization (to 1e-12) and realness of a0.

    Raises
    ------
    NormalizationError
        If the squared norm deviates from 1 by more than 1e-12.
    ValueError
        If a0 carries an imaginary part.
    """
    a0 = state.a0
    if isinstance(a0, complex) and abs(a0.imag) > 0.0:
        raise ValueError(f"a0 must be real, got {a0!r}")
    deviation = abs(state.norm_squared - 1.0)
    if deviation > NORM_TOL:
        raise NormalizationError(deviation)

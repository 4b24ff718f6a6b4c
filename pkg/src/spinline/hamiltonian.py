"""XY Hamiltonian blocks on the one- and two-excitation subspaces.

The chain couples nearest neighbors with an XY exchange term, which acts as
a hopping of strength J/2 between excitation basis states.  The coupling
profile is uniform (D = 1, dimensionless) except for the two outermost bond
pairs delta1 and delta2 at each end.
"""

import json
from dataclasses import dataclass, field, replace

import numpy as np

from .basis import ExcitationBasis
from .errors import ChainLengthError, SizeMismatchError

MIN_PROFILE_NODES = 7  # below this the [d1, d2, bulk.., d2, d1] layout overlaps


@dataclass(frozen=True)
class ChainSpec:
    """Coupling profile of an N-node chain.

    Bond i connects nodes i and i+1.  Bonds 1 and N-1 carry ``delta1``,
    bonds 2 and N-2 carry ``delta2`` and bonds 3..N-3 carry the bulk values
    (nominally 1.0).  Non-uniform profiles need n_nodes >= 7; shorter
    chains are supported only with the fully uniform profile.
    """

    n_nodes: int
    delta1: float = 1.0
    delta2: float = 1.0
    bulk: np.ndarray = None

    def __post_init__(self):
        if self.n_nodes < 4:
            raise ChainLengthError(f"chain needs at least 4 nodes, got {self.n_nodes}")
        n_bulk = max(0, self.n_nodes - 5)
        bulk = np.ones(n_bulk) if self.bulk is None else np.asarray(self.bulk, float)
        if bulk.shape != (n_bulk,):
            raise SizeMismatchError(
                f"expected {n_bulk} bulk couplings for n={self.n_nodes}, got {bulk.shape}"
            )
        object.__setattr__(self, "bulk", bulk)
        uniform = (
            self.delta1 == 1.0 and self.delta2 == 1.0 and np.all(bulk == 1.0)
        )
        if self.n_nodes < MIN_PROFILE_NODES and not uniform:
            raise ChainLengthError(
                f"boundary-tuned profile needs n >= {MIN_PROFILE_NODES}, got {self.n_nodes}"
            )
        if self.delta1 <= 0 or self.delta2 <= 0 or np.any(bulk <= 0):
            raise ValueError("all couplings must be strictly positive")

    @classmethod
    def uniform(cls, n_nodes):
        return cls(n_nodes=n_nodes)

    @classmethod
    def tuned(cls, n_nodes, delta1, delta2):
        return cls(n_nodes=n_nodes, delta1=delta1, delta2=delta2)

    def couplings(self):
        """The N-1 bond couplings [delta1, delta2, bulk..., delta2, delta1]."""
        n = self.n_nodes
        J = np.empty(n - 1)
        J[0] = J[-1] = self.delta1
        if n >= 5:
            J[1] = J[-2] = self.delta2
        else:  # n == 4: the two second-bond slots coincide
            J[1] = self.delta2
        if n >= 6:
            J[2 : n - 3] = self.bulk
        return J

    def to_json(self):
        return json.dumps(
            {
                "n": self.n_nodes,
                "delta1": self.delta1,
                "delta2": self.delta2,
                "bulk": self.bulk.tolist(),
            }
        )

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        return cls(
            n_nodes=d["n"],
            delta1=d["delta1"],
            delta2=d["delta2"],
            bulk=np.asarray(d["bulk"], float) if d.get("bulk") is not None else None,
        )


@dataclass(frozen=True)
class HamiltonianBlocks:
    """One- and two-excitation blocks of the XY Hamiltonian.

    ``h1`` is the N x N tridiagonal hopping matrix (J/2 off-diagonal);
    ``h2`` acts on the ordered-pair basis and may be None when only
    single-excitation dynamics is needed.  The vacuum has energy zero and
    is not represented.
    """

    spec: ChainSpec
    basis: ExcitationBasis
    h1: np.ndarray = field(repr=False)
    h2: np.ndarray = field(repr=False)


def build_blocks(spec, basis, two_excitation=True):
    """Assemble the Hamiltonian blocks for ``spec`` on ``basis``.

    The two-excitation block connects pairs that differ by moving one
    excitation across a single bond; moves onto an occupied node are
    excluded (no double occupancy).
    """
    if spec.n_nodes != basis.n_nodes:
        raise SizeMismatchError(
            f"spec has {spec.n_nodes} nodes but basis has {basis.n_nodes}"
        )
    n = spec.n_nodes
    J = spec.couplings()
    h1 = np.zeros((n, n))
    rows = np.arange(n - 1)
    h1[rows, rows + 1] = J / 2
    h1[rows + 1, rows] = J / 2

    h2 = None
    if two_excitation:
        idx = basis.pair_index
        h2 = np.zeros((basis.n_pairs, basis.n_pairs))
        for (a, b) in basis.pairs:
            i = idx[(a, b)]
            if a + 1 < b:
                h2[i, idx[(a + 1, b)]] = J[a - 1] / 2
            if a > 1:
                h2[i, idx[(a - 1, b)]] = J[a - 2] / 2
            if b < n:
                h2[i, idx[(a, b + 1)]] = J[b - 1] / 2
            if b - 1 > a:
                h2[i, idx[(a, b - 1)]] = J[b - 2] / 2
    return HamiltonianBlocks(spec=spec, basis=basis, h1=h1, h2=h2)


def apply_disorder(spec, epsilon, deltas):
    """Replace the bulk couplings by 1 + epsilon * deltas.

    Only bonds 3..N-3 are perturbed; the boundary pairs delta1, delta2 are
    assumed perfectly manufactured and stay untouched.
    """
    if epsilon < 0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon}")
    deltas = np.asarray(deltas, float)
    n_bulk = spec.bulk.shape[0]
    if deltas.shape != (n_bulk,):
        raise SizeMismatchError(
            f"expected {n_bulk} bond perturbations, got {deltas.shape}"
        )
    if np.any(np.abs(deltas) > 1.0):
        raise ValueError("bond perturbations must lie in [-1, 1]")
    return replace(spec, bulk=1.0 + epsilon * deltas)

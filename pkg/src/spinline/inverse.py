"""Inverse problem: control amplitudes that create a target receiver state.

The receiver matrix is quadratic in the controls, so creation amounts to
solving a system of real quadratic equations under the normalization
constraint.  Werner targets reduce to 6 real equations in the 6 real
pair amplitudes; general targets go through projected nonlinear least
squares over the full 20-parameter control vector.  Both use seeded
multi-start: solutions are particular, not unique, and reproducibility of
our chosen solution is what matters.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares

from .basis import SenderState
from .errors import InfeasibleTargetError
from .receiver import assemble_rho

WERNER_RESIDUAL_TOL = 1e-10
FEASIBILITY_RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class TargetState:
    """Desired 4x4 receiver density matrix."""

    matrix: np.ndarray = field(repr=False)

    def validate(self, tol=1e-8, allow_nonphysical=False):
        m = self.matrix
        if m.shape != (4, 4):
            raise ValueError(f"target must be 4x4, got {m.shape}")
        herm = np.max(np.abs(m - m.conj().T))
        tr = abs(np.trace(m) - 1.0)
        lo = np.min(np.linalg.eigvalsh(0.5 * (m + m.conj().T)))
        if not allow_nonphysical and (herm > tol or tr > tol or lo < -tol):
            raise ValueError(
                f"not a density matrix (hermiticity {herm:.1e}, trace dev {tr:.1e}, "
                f"min eigenvalue {lo:.1e})"
            )
        return self


def werner_target(p):
    """Two-qubit Werner state with mixing parameter p in [0, 1]."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"werner parameter must lie in [0, 1], got {p}")
    m = np.zeros((4, 4), complex)
    m[0, 0] = m[3, 3] = (1.0 - p) / 4.0
    m[1, 1] = m[2, 2] = (1.0 + p) / 4.0
    m[1, 2] = m[2, 1] = -p / 2.0
    return TargetState(matrix=m)


@dataclass(frozen=True)
class InverseSolution:
    """Controls found for a target, with honest quality numbers.

    ``residual`` is the largest violation of the defining equations;
    ``discrepancy`` is the normalized Frobenius distance between the state
    assembled from the same parameters and the exact target.
    """

    controls: SenderState
    residual: float
    discrepancy: float


def discrepancy(rho, target):
    """Frobenius-norm distance ||rho - A|| / ||A||."""
    a = target.matrix if isinstance(target, TargetState) else np.asarray(target)
    r = rho.rho if hasattr(rho, "rho") else np.asarray(rho)
    norm_a = np.linalg.norm(a)
    if norm_a == 0.0:
        raise ValueError("target matrix has zero norm")
    return float(np.linalg.norm(r - a) / norm_a)


def _werner_system(params, p):
    """Equations and Jacobian for the 6 real pair controls."""
    q = params.p_pair
    Gmm = params.P_mm.real
    GNN = params.P_NN.real
    PmN = params.P_mN
    PmN_s = PmN + PmN.T
    target_hi = (1.0 + p) / 4.0
    target_lo = (1.0 - p) / 4.0

    def fun(x):
        s = q @ x
        S = x @ PmN @ x
        return np.array([
            (s * s.conjugate()).real - target_lo,
            x @ Gmm @ x - target_hi,
            x @ GNN @ x - target_hi,
            S.real + p / 2.0,
            S.imag,
            x @ x - 1.0,
        ])

    def jac(x):
        s = q @ x
        g = PmN_s @ x
        return np.vstack([
            2.0 * (np.conj(s) * q).real,
            2.0 * Gmm @ x,
            2.0 * GNN @ x,
            g.real,
            g.imag,
            2.0 * x,
        ])

    return fun, jac


def solve_werner(params, p, n_starts=64, seed=0, residual_tol=WERNER_RESIDUAL_TOL):
    """Real pair-amplitude controls creating the Werner state.

    Zero entries of the Werner matrix force a0 = a_i = 0, and particular
    solutions exist with real pair amplitudes, leaving 6 real equations in
    6 unknowns.  Multi-start damped least squares; residuals below
    ``residual_tol`` count as exact, so ties go to the lowest start index.
    Start 0 is the neutral equal-amplitude vector: the system is solvable
    from it throughout the feasible range and, where the solution manifold
    is degenerate (truncated parameter sets), it selects a reproducible
    branch instead of an arbitrary manifold point.

    Raises
    ------
    InfeasibleTargetError
        If no start reaches ``residual_tol`` (expected for p beyond the
        feasibility boundary).
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"werner parameter must lie in [0, 1], got {p}")
    fun, jac = _werner_system(params, p)
    rng = np.random.default_rng(seed)
    starts = [np.full(6, 1.0 / np.sqrt(6.0))]
    while len(starts) < n_starts:
        x0 = rng.standard_normal(6)
        starts.append(x0 / np.linalg.norm(x0))
    best = None
    for start, x0 in enumerate(starts):
        sol = least_squares(
            fun, x0, jac=jac, method="trf",
            xtol=5e-16, ftol=5e-16, gtol=5e-16, max_nfev=400,
        )
        res = float(np.max(np.abs(fun(sol.x))))
        if res <= residual_tol:
            best = (res, sol.x.copy(), start)
            break
        if best is None or res < best[0]:
            best = (res, sol.x.copy(), start)
    res, x, _ = best
    if res > residual_tol:
        raise InfeasibleTargetError(res, best_controls=x)
    state = SenderState.from_double(x, params.n_sender)
    rho = assemble_rho(params, state)
    return InverseSolution(
        controls=state,
        residual=res,
        discrepancy=discrepancy(rho, werner_target(p)),
    )


def _unpack_controls(x, n_sender, n_pairs):
    x = x / np.linalg.norm(x)
    a0 = x[0]
    a1 = x[1 : 1 + n_sender] + 1j * x[1 + n_sender : 1 + 2 * n_sender]
    rest = x[1 + 2 * n_sender :]
    a2 = rest[:n_pairs] + 1j * rest[n_pairs:]
    return SenderState(a0, a1, a2, n_sender)


def solve_general(params, target, n_starts=32, seed=0):
    """Best-found controls for an arbitrary 4x4 target.

    Minimizes the summed squared entry mismatch of the assembled receiver
    matrix over the normalized 21-component control vector (20 free real
    parameters).  Always returns the best solution found, with its honest
    residual; no feasibility claim is made.
    """
    a = target.matrix if isinstance(target, TargetState) else np.asarray(target)
    n_sender = params.n_sender
    n_pairs = len(params.pairs)
    dim = 1 + 2 * n_sender + 2 * n_pairs

    def residual_vector(x):
        state = _unpack_controls(x, n_sender, n_pairs)
        d = assemble_rho(params, state).rho - a
        iu = np.triu_indices(4)
        return np.concatenate([d[iu].real, d[iu].imag])

    rng = np.random.default_rng(seed)
    best = None
    for start in range(n_starts):
        x0 = rng.standard_normal(dim)
        x0 /= np.linalg.norm(x0)
        sol = least_squares(
            residual_vector, x0, method="trf",
            xtol=5e-16, ftol=5e-16, gtol=5e-16, max_nfev=600,
        )
        state = _unpack_controls(sol.x, n_sender, n_pairs)
        res = float(np.max(np.abs(assemble_rho(params, state).rho - a)))
        if best is None or res < best[0]:
            best = (res, state, start)
    res, state, _ = best
    return InverseSolution(
        controls=state,
        residual=res,
        discrepancy=discrepancy(assemble_rho(params, state), TargetState(matrix=a)),
    )


def feasibility_scan(params, p_grid, n_starts=64, seed=0,
                     residual_tol=FEASIBILITY_RESIDUAL_TOL, refine_tol=5e-4):
    """Largest Werner parameter p for which controls exist.

    Walks the monotone grid to bracket the boundary, then bisects the
    bracket down to ``refine_tol``.  Returns (boundary, resolution).
    """
    p_grid = np.asarray(p_grid, float)
    if p_grid.ndim != 1 or np.any(np.diff(p_grid) <= 0):
        raise ValueError("p_grid must be strictly increasing")

    def feasible(p):
        try:
            solve_werner(params, p, n_starts=n_starts, seed=seed,
                         residual_tol=residual_tol)
            return True
        except InfeasibleTargetError:
            return False

    flags = [feasible(p) for p in p_grid]
    if not flags[0]:
        return float(p_grid[0]), float(p_grid[1] - p_grid[0])
    if all(flags):
        return float(p_grid[-1]), float(p_grid[-1] - p_grid[-2])
    hi_idx = next(i for i, ok in enumerate(flags) if not ok)
    lo, hi = float(p_grid[hi_idx - 1]), float(p_grid[hi_idx])
    while hi - lo > refine_tol:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi), 0.5 * (hi - lo)


def zero_family_iii(params):
    """Copy of the parameter set with every family-III entry set to zero.

    The small-magnitude approximation used when solving the inverse problem
    against a simplified line description.
    """
    from dataclasses import replace

    from .receiver import classify_families

    cls = classify_families(params)
    pidx = {p: i for i, p in enumerate(params.pairs)}
    arrays = {
        "p_N": params.p_N.copy(),
        "p_Nm1": params.p_Nm1.copy(),
        "p_pair": params.p_pair.copy(),
        "P_Nm1": params.P_Nm1.copy(),
        "P_N": params.P_N.copy(),
        "P_mm": params.P_mm.copy(),
        "P_mN": params.P_mN.copy(),
        "P_NN": params.P_NN.copy(),
    }
    for (kind, idx), tag in cls.tags.items():
        if tag != "III":
            continue
        if kind in ("p_N", "p_Nm1"):
            arrays[kind][idx[0] - 1] = 0.0
        elif kind == "p_pair":
            arrays[kind][pidx[idx]] = 0.0
        elif kind in ("P_Nm1", "P_N"):
            arrays[kind][idx[0] - 1, pidx[idx[1:]]] = 0.0
        else:
            arrays[kind][pidx[idx[:2]], pidx[idx[2:]]] = 0.0
    return replace(params, **arrays)

"""Monte-Carlo study of coupling imperfections.

Bulk bonds are manufactured only to accuracy epsilon: each sampled chain
draws independent uniform perturbations on [-1, 1] per bulk bond while the
boundary pairs and the registration time stay fixed at their unperturbed
values.  Statistics are collected over N_p independent chains.

Standard deviation of a complex parameter is defined through |P - <P>|^2,
the only convention that keeps sigma real; per-component (re, im) spreads
are stored alongside for error-bar plots.
"""

import csv
from dataclasses import dataclass, field

import numpy as np

from .dynamics import diagonalize
from .hamiltonian import apply_disorder, build_blocks
from .inverse import discrepancy, werner_target
from .receiver import assemble_rho, classify_families, line_params_at

DEFAULT_N_CHAINS = 100


def sample_chain(base, epsilon, rng):
    """One chain with bulk couplings 1 + epsilon * uniform(-1, 1)."""
    deltas = rng.uniform(-1.0, 1.0, base.bulk.shape[0])
    return apply_disorder(base, epsilon, deltas)


def _chain_rng(seed, index):
    # independent per-chain streams so evaluation order cannot matter
    return np.random.default_rng([seed, index])


@dataclass(frozen=True)
class ParamStats:
    """Per-entry statistics of the parameter set across sampled chains."""

    mean: complex
    std: float
    std_re: float
    std_im: float
    unperturbed: complex
    family: str


@dataclass(frozen=True)
class DisorderStudy:
    """Distribution of the line parameters over random chains."""

    epsilon: float
    n_chains: int
    seed: int
    t0: float
    stats: dict = field(repr=False)  # (kind, indices) -> ParamStats

    def shift(self, key):
        """Mean minus unperturbed value, the quantity plotted per family."""
        s = self.stats[key]
        return s.mean - s.unperturbed


def param_statistics(base, t0, epsilon, n_chains=DEFAULT_N_CHAINS, seed=0, n_sender=4):
    """Mean and deviation of every line parameter over sampled chains."""
    if n_chains < 2:
        raise ValueError(f"need at least 2 chains, got {n_chains}")
    basis_blocks = build_blocks(base, _basis_for(base))
    reference = line_params_at(diagonalize(basis_blocks), t0, n_sender)
    keys = [(kind, idx) for kind, idx, _ in reference.items()]
    ref_values = np.array([v for _, _, v in reference.items()])
    samples = np.empty((n_chains, len(keys)), complex)
    for i in range(n_chains):
        spec_i = sample_chain(base, epsilon, _chain_rng(seed, i))
        spectral = diagonalize(build_blocks(spec_i, basis_blocks.basis))
        params_i = line_params_at(spectral, t0, n_sender)
        samples[i] = [v for _, _, v in params_i.items()]
    mean = samples.mean(axis=0)
    centered = samples - mean
    # identical samples (e.g. epsilon = 0) must give exactly zero spread;
    # without the mask, rounding in the mean leaves ~1e-31 residue
    constant = np.all(samples == samples[:1], axis=0)
    centered[:, constant] = 0.0
    mean[constant] = samples[0, constant]
    std = np.sqrt(np.sum(np.abs(centered) ** 2, axis=0) / (n_chains - 1))
    std_re = centered.real.std(axis=0, ddof=1)
    std_im = centered.imag.std(axis=0, ddof=1)
    families = classify_families(reference).tags
    stats = {
        key: ParamStats(
            mean=complex(mean[j]),
            std=float(std[j]),
            std_re=float(std_re[j]),
            std_im=float(std_im[j]),
            unperturbed=complex(ref_values[j]),
            family=families[key],
        )
        for j, key in enumerate(keys)
    }
    return DisorderStudy(
        epsilon=epsilon, n_chains=n_chains, seed=seed, t0=t0, stats=stats
    )


def _basis_for(spec):
    from .basis import build_basis

    return build_basis(spec.n_nodes)


@dataclass(frozen=True)
class RobustnessPoint:
    """Discrepancy statistics for one Werner parameter."""

    p: float
    mean: float
    std: float
    sem: float


def werner_robustness(base, t0, controls, epsilon, n_chains=DEFAULT_N_CHAINS,
                      seed=0):
    """Discrepancy of fixed controls evaluated on random chains.

    ``controls`` maps the Werner parameter p to the SenderState solved on
    the unperturbed chain.  For each sampled chain the controls are sent
    as-is and the created state is compared to the exact Werner target.
    Returns a list of RobustnessPoint ordered like ``controls``.
    """
    if n_chains < 2:
        raise ValueError(f"need at least 2 chains, got {n_chains}")
    if not controls:
        raise ValueError("controls table is empty")
    basis = _basis_for(base)
    p_values = list(controls)
    targets = {p: werner_target(p) for p in p_values}
    deltas = np.empty((n_chains, len(p_values)))
    for i in range(n_chains):
        spec_i = sample_chain(base, epsilon, _chain_rng(seed, i))
        spectral = diagonalize(build_blocks(spec_i, basis))
        params_i = line_params_at(spectral, t0, next(iter(controls.values())).n_sender)
        for j, p in enumerate(p_values):
            rho = assemble_rho(params_i, controls[p])
            deltas[i, j] = discrepancy(rho, targets[p])
    mean = deltas.mean(axis=0)
    std = deltas.std(axis=0, ddof=1)
    return [
        RobustnessPoint(
            p=float(p), mean=float(mean[j]), std=float(std[j]),
            sem=float(std[j] / np.sqrt(n_chains)),
        )
        for j, p in enumerate(p_values)
    ]


def export_param_stats_csv(study, path, header_lines=()):
    """Fig-data export: (param_index, kind, indices, family, mean, shift, std)."""
    with open(path, "w", newline="") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        w = csv.writer(fh)
        w.writerow([
            "index", "kind", "indices", "family",
            "mean_re", "mean_im", "std", "std_re", "std_im",
            "shift_re", "shift_im", "shift_abs",
        ])
        for j, (key, s) in enumerate(study.stats.items()):
            shift = s.mean - s.unperturbed
            w.writerow([
                j, key[0], ";".join(str(i) for i in key[1]), s.family,
                f"{s.mean.real:.12e}", f"{s.mean.imag:.12e}",
                f"{s.std:.12e}", f"{s.std_re:.12e}", f"{s.std_im:.12e}",
                f"{shift.real:.12e}", f"{shift.imag:.12e}", f"{abs(shift):.12e}",
            ])


def export_robustness_csv(points, path, header_lines=()):
    """Fig-data export: (p, mean_delta, std_delta, sem_delta)."""
    with open(path, "w", newline="") as fh:
        for line in header_lines:
            fh.write(f"# {line}\n")
        w = csv.writer(fh)
        w.writerow(["p", "mean_delta", "std_delta", "sem_delta"])
        for pt in points:
            w.writerow([
                f"{pt.p:.12e}", f"{pt.mean:.12e}", f"{pt.std:.12e}", f"{pt.sem:.12e}",
            ])

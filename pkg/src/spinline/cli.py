"""Command-line front end.

Every subcommand builds a plain config dict, validates it against a JSON
schema, runs, and embeds the config in each artifact it writes, so a run
is reproducible from its artifacts alone.  Exit codes: 0 success,
1 failed verification report, 2 invalid config, 3 file I/O error,
4 infeasible target or no transfer arrival.
"""

import argparse
import json
import sys

import numpy as np
import jsonschema

from . import benchmarks as bm
from .basis import build_basis
from .chainopt import optimize_boundary
from .disorder import (
    export_param_stats_csv,
    export_robustness_csv,
    param_statistics,
    werner_robustness,
)
from .dynamics import diagonalize
from .errors import InfeasibleTargetError, NoArrivalError
from .hamiltonian import ChainSpec, build_blocks
from .inverse import (
    TargetState,
    feasibility_scan,
    solve_general,
    solve_werner,
    werner_target,
)
from .probing import (
    extract_params,
    probe_outputs_from_json,
    probe_outputs_to_json,
    simulate_probes,
)
from .receiver import export_params_csv, import_params_csv, line_params_at
from .verification import (
    check_boundary_optimization,
    check_disorder,
    check_family_i,
    check_family_ii,
    check_family_iii,
    check_invariants,
    check_oracle_equivalence,
    check_probe_closure,
    check_werner,
)

EXIT_OK = 0
EXIT_REPORT_FAILED = 1
EXIT_BAD_CONFIG = 2
EXIT_IO = 3
EXIT_INFEASIBLE = 4

_CHAIN_FIELDS = {
    "n": {"type": "integer", "minimum": 4},
    "tuned": {"type": "boolean"},
    "chain": {"type": "string"},
    "t0": {"type": "number"},
    "sender": {"type": "integer", "minimum": 2},
}

SCHEMAS = {
    "optimize-chain": {
        "type": "object",
        "properties": {
            "command": {"const": "optimize-chain"},
            "n": {"type": "integer", "minimum": 7},
            "grid_step": {"type": "number", "exclusiveMinimum": 0},
            "t_max": {"type": "number", "exclusiveMinimum": 0},
            "delta1_range": {"type": "array", "items": {"type": "number"}},
            "delta2_range": {"type": "array", "items": {"type": "number"}},
            "out": {"type": ["string", "null"]},
        },
        "required": ["command", "n"],
        "additionalProperties": False,
    },
    "compute-params": {
        "type": "object",
        "properties": {
            "command": {"const": "compute-params"},
            "out": {"type": ["string", "null"]},
            **_CHAIN_FIELDS,
        },
        "required": ["command"],
        "additionalProperties": False,
    },
    "probe-params": {
        "type": "object",
        "properties": {
            "command": {"const": "probe-params"},
            "outputs": {"type": "string"},
            "dump_outputs": {"type": ["string", "null"]},
            "out": {"type": ["string", "null"]},
            **_CHAIN_FIELDS,
        },
        "required": ["command"],
        "additionalProperties": False,
    },
    "create-state": {
        "type": "object",
        "properties": {
            "command": {"const": "create-state"},
            "target": {"type": "string"},
            "p": {"type": "number", "minimum": 0, "maximum": 1},
            "params": {"type": "string"},
            "starts": {"type": "integer", "minimum": 1},
            "seed": {"type": "integer", "minimum": 0},
            "out": {"type": ["string", "null"]},
        },
        "required": ["command", "target", "params"],
        "additionalProperties": False,
    },
    "feasibility": {
        "type": "object",
        "properties": {
            "command": {"const": "feasibility"},
            "params": {"type": "string"},
            "grid": {"type": "string"},
            "starts": {"type": "integer", "minimum": 1},
            "seed": {"type": "integer", "minimum": 0},
            "out": {"type": ["string", "null"]},
        },
        "required": ["command", "params"],
        "additionalProperties": False,
    },
    "disorder-study": {
        "type": "object",
        "properties": {
            "command": {"const": "disorder-study"},
            "epsilon": {"type": "number", "minimum": 0},
            "chains": {"type": "integer", "minimum": 2},
            "seed": {"type": "integer", "minimum": 0},
            "out": {"type": "string"},
            "params_csv": {"type": ["string", "null"]},
            "robustness_csv": {"type": ["string", "null"]},
            **_CHAIN_FIELDS,
        },
        "required": ["command", "epsilon", "seed", "out"],
        "additionalProperties": False,
    },
    "reproduce-paper": {
        "type": "object",
        "properties": {
            "command": {"const": "reproduce-paper"},
            "n": {"enum": [20, 60]},
            "seed": {"type": "integer", "minimum": 0},
            "chains": {"type": "integer", "minimum": 2},
            "fast": {"type": "boolean"},
        },
        "required": ["command", "n"],
        "additionalProperties": False,
    },
}


class ConfigError(ValueError):
    pass


def validate_config(config):
    command = config.get("command")
    if command not in SCHEMAS:
        raise ConfigError(f"unknown command {command!r}")
    try:
        jsonschema.validate(config, SCHEMAS[command])
    except jsonschema.ValidationError as exc:
        raise ConfigError(exc.message) from exc
    return config


def _resolve_chain(config, default_tuned=False):
    """(spec, t0, n_sender) from the chain-selection part of a config."""
    sender = config.get("sender", 4)
    if config.get("chain"):
        with open(config["chain"]) as fh:
            spec = ChainSpec.from_json(fh.read())
        if config.get("t0") is None:
            raise ConfigError("--t0 is required with --chain")
        return spec, float(config["t0"]), sender
    n = config.get("n")
    if n is None:
        raise ConfigError("either --chain or --n is required")
    if default_tuned and config.get("t0") is None and n in bm.TUNED_CHAINS:
        config = {**config, "tuned": True}
    if config.get("tuned"):
        if n not in bm.TUNED_CHAINS:
            raise ConfigError(f"no tuned reference couplings for n={n}")
        ref = bm.TUNED_CHAINS[n]
        spec = ChainSpec(n_nodes=n, delta1=ref["delta1"], delta2=ref["delta2"])
        t0 = float(config.get("t0", ref["t0"]))
        return spec, t0, sender
    if config.get("t0") is None:
        raise ConfigError("--t0 is required unless --tuned is given")
    return ChainSpec.uniform(n), float(config["t0"]), sender


def _emit_json(config, result, out):
    artifact = json.dumps(
        {"config": config, "result": result}, indent=1, sort_keys=True
    )
    if out:
        with open(out, "w") as fh:
            fh.write(artifact + "\n")
    else:
        print(artifact)


def _provenance(config):
    return [f"config: {json.dumps(config, sort_keys=True)}"]


def run_optimize_chain(config):
    kwargs = {}
    if config.get("grid_step"):
        kwargs["grid_step"] = config["grid_step"]
    if config.get("t_max"):
        kwargs["t_max"] = config["t_max"]
    for key in ("delta1_range", "delta2_range"):
        if config.get(key):
            lo, hi = config[key]
            kwargs[key] = (lo, hi)
    opt = optimize_boundary(config["n"], **kwargs)
    _emit_json(config, opt.as_dict(), config.get("out"))
    return EXIT_OK


def _line_params_for(config):
    spec, t0, sender = _resolve_chain(config)
    spectral = diagonalize(build_blocks(spec, build_basis(spec.n_nodes)))
    return line_params_at(spectral, t0, n_sender=sender), spec


def run_compute_params(config):
    params, _spec = _line_params_for(config)
    out = config.get("out") or "params.csv"
    export_params_csv(params, out, header_lines=_provenance(config))
    print(f"wrote {params.n_entries} parameters to {out}")
    return EXIT_OK


def run_probe_params(config):
    if config.get("outputs"):
        with open(config["outputs"]) as fh:
            outputs = probe_outputs_from_json(fh.read())
    else:
        params_true, _spec = _line_params_for(config)
        outputs = simulate_probes(params_true)
        if config.get("dump_outputs"):
            with open(config["dump_outputs"], "w") as fh:
                fh.write(probe_outputs_to_json(outputs) + "\n")
    params = extract_params(outputs)
    out = config.get("out") or "params.csv"
    export_params_csv(params, out, header_lines=_provenance(config))
    print(f"extracted {params.n_entries} parameters to {out}")
    return EXIT_OK


def _load_target(config):
    target = config["target"]
    if target == "werner":
        if config.get("p") is None:
            raise ConfigError("--p is required for the werner target")
        return werner_target(config["p"]), True
    if target.startswith("file:"):
        with open(target[5:]) as fh:
            data = json.load(fh)
        m = np.asarray(data["re"], float) + 1j * np.asarray(data["im"], float)
        return TargetState(matrix=m).validate(), False
    raise ConfigError(f"unknown target {target!r} (use 'werner' or 'file:...')")


def run_create_state(config):
    params = import_params_csv(config["params"])
    target, is_werner = _load_target(config)
    seed = config.get("seed", 0)
    starts = config.get("starts", 64 if is_werner else 32)
    if is_werner:
        sol = solve_werner(params, config["p"], n_starts=starts, seed=seed)
        pair_labels = [f"a_{n}{m}" for (n, m) in params.pairs]
        controls = {
            lab: sol.controls.a_double[i].real
            for i, lab in enumerate(pair_labels)
        }
    else:
        sol = solve_general(params, target, n_starts=starts, seed=seed)
        controls = {
            "a0": sol.controls.a0,
            "a_single": [[z.real, z.imag] for z in sol.controls.a_single],
            "a_double": [[z.real, z.imag] for z in sol.controls.a_double],
        }
    result = {
        "controls": controls,
        "residual": sol.residual,
        "discrepancy": sol.discrepancy,
    }
    _emit_json(config, result, config.get("out"))
    return EXIT_OK


def run_feasibility(config):
    params = import_params_csv(config["params"])
    lo, hi, step = (float(x) for x in config.get("grid", "0:1:0.02").split(":"))
    grid = np.arange(lo, hi + step / 2, step)
    boundary, resolution = feasibility_scan(
        params, grid,
        n_starts=config.get("starts", 64),
        seed=config.get("seed", 0),
    )
    _emit_json(config, {"boundary": boundary, "resolution": resolution},
               config.get("out"))
    return EXIT_OK


def run_disorder_study(config):
    # bare --n defaults to the tuned benchmark chain: a disorder study only
    # makes sense at a fixed registration time
    spec, t0, sender = _resolve_chain(config, default_tuned=True)
    spectral = diagonalize(build_blocks(spec, build_basis(spec.n_nodes)))
    params = line_params_at(spectral, t0, n_sender=sender)
    epsilon = config["epsilon"]
    n_chains = config.get("chains", 100)
    seed = config["seed"]
    study = param_statistics(spec, t0, epsilon, n_chains=n_chains, seed=seed,
                             n_sender=sender)
    controls = {
        round(0.1 * k, 1): solve_werner(params, round(0.1 * k, 1), seed=seed).controls
        for k in range(9)
    }
    points = werner_robustness(spec, t0, controls, epsilon,
                               n_chains=n_chains, seed=seed)
    result = {
        "epsilon": epsilon,
        "chains": n_chains,
        "param_stats": {
            f"{kind};{';'.join(map(str, idx))}": {
                "family": s.family,
                "mean": [s.mean.real, s.mean.imag],
                "std": s.std,
                "shift": [
                    (s.mean - s.unperturbed).real,
                    (s.mean - s.unperturbed).imag,
                ],
            }
            for (kind, idx), s in study.stats.items()
        },
        "werner_robustness": [
            {"p": pt.p, "mean_delta": pt.mean, "std_delta": pt.std, "sem": pt.sem}
            for pt in points
        ],
    }
    _emit_json(config, result, config["out"])
    if config.get("params_csv"):
        export_param_stats_csv(study, config["params_csv"],
                               header_lines=_provenance(config))
    if config.get("robustness_csv"):
        export_robustness_csv(points, config["robustness_csv"],
                              header_lines=_provenance(config))
    print(f"wrote disorder study to {config['out']}")
    return EXIT_OK


def run_reproduce(config):
    n = config["n"]
    seed = config.get("seed", 0)
    chains = config.get("chains", 100)
    sections = []
    if not config.get("fast"):
        sections.append((f"boundary optimization (n={n})",
                         lambda: check_boundary_optimization(n)))
    sections.append((f"family I values (n={n})", lambda: check_family_i(n)))
    sections.append((f"family II values (n={n})", lambda: check_family_ii(n)))
    if n == 20:
        sections += [
            ("family III values (n=20)", check_family_iii),
            ("oracle equivalence", check_oracle_equivalence),
            ("probe-protocol closure", lambda: check_probe_closure(seed=seed)),
            ("werner creation", lambda: check_werner(seed=seed)),
            ("disorder robustness",
             lambda: check_disorder(seed=seed, n_chains=chains)),
            ("structural invariants", check_invariants),
        ]
    all_ok = True
    for title, runner in sections:
        print(f"== {title}")
        for res in runner():
            print(res.line())
            all_ok &= res.passed
    print("== report:", "ALL CHECKS PASSED" if all_ok else "SOME CHECKS FAILED")
    return EXIT_OK if all_ok else EXIT_REPORT_FAILED


RUNNERS = {
    "optimize-chain": run_optimize_chain,
    "compute-params": run_compute_params,
    "probe-params": run_probe_params,
    "create-state": run_create_state,
    "feasibility": run_feasibility,
    "disorder-study": run_disorder_study,
    "reproduce-paper": run_reproduce,
}


def run_config(config):
    """Validate and execute a config dict; returns the exit code."""
    validate_config(config)
    return RUNNERS[config["command"]](config)


def _chain_arguments(sub):
    sub.add_argument("--n", type=int, help="chain length (uniform unless --tuned)")
    sub.add_argument("--tuned", action="store_true",
                     help="use the benchmark boundary couplings and t0")
    sub.add_argument("--chain", help="JSON chain-spec file")
    sub.add_argument("--t0", type=float, help="registration time")
    sub.add_argument("--sender", type=int, default=4, help="sender size")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="spinline",
        description="Remote two-qubit state creation through boundary-tuned XY chains",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("optimize-chain", help="tune the boundary couplings")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid-step", type=float, default=None)
    p.add_argument("--t-max", type=float, default=None)
    p.add_argument("--delta1-range", default=None, help="lo,hi")
    p.add_argument("--delta2-range", default=None, help="lo,hi")
    p.add_argument("--out")

    p = subs.add_parser("compute-params", help="line parameters from the Hamiltonian")
    _chain_arguments(p)
    p.add_argument("--out")

    p = subs.add_parser("probe-params", help="line parameters from probe outputs")
    _chain_arguments(p)
    p.add_argument("--outputs", help="probe-output JSON (external data)")
    p.add_argument("--dump-outputs", help="write the simulated probe outputs here")
    p.add_argument("--out")

    p = subs.add_parser("create-state", help="solve for sender controls")
    p.add_argument("--target", required=True, help="'werner' or 'file:target.json'")
    p.add_argument("--p", type=float, help="werner mixing parameter")
    p.add_argument("--params", required=True, help="line-parameter CSV")
    p.add_argument("--starts", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")

    p = subs.add_parser("feasibility", help="largest creatable werner parameter")
    p.add_argument("--params", required=True)
    p.add_argument("--grid", default="0:1:0.02", help="lo:hi:step")
    p.add_argument("--starts", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")

    p = subs.add_parser("disorder-study", help="Monte-Carlo over random chains")
    _chain_arguments(p)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--chains", type=int, default=100)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--params-csv")
    p.add_argument("--robustness-csv")

    p = subs.add_parser("reproduce-paper",
                        help="run the verification report against the references")
    p.add_argument("--n", type=int, default=20, choices=(20, 60))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--chains", type=int, default=100)
    p.add_argument("--fast", action="store_true",
                   help="skip the boundary-coupling optimization")

    p = subs.add_parser("run", help="execute a saved config file")
    p.add_argument("--config", required=True)
    return parser


def _config_from_args(args):
    if args.command == "run":
        with open(args.config) as fh:
            return json.load(fh)
    config = {"command": args.command}
    for key, value in vars(args).items():
        # drop unset flags; 0 and 0.0 are real values, False is an unset flag
        if key == "command" or value is None or value is False:
            continue
        config[key] = value
    for key in ("delta1_range", "delta2_range"):
        if key in config:
            lo, hi = config[key].split(",")
            config[key] = [float(lo), float(hi)]
    return config


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = _config_from_args(args)
        return run_config(config)
    except (ConfigError, jsonschema.ValidationError) as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    except OSError as exc:
        print(f"file error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (InfeasibleTargetError, NoArrivalError) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Subcommands: ``run`` (Monte Carlo runs of one configuration), ``sweep``
(parameter sweep with aggregates), ``gen-er`` (write a random edge list),
``derive`` (degree-rank subgraph extraction), and ``schemes`` (list scheme
tokens).  Results are CSV on stdout or via ``--out``.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import experiment
from .experiment import (
    ConfigError,
    ExperimentConfig,
    NetworkSource,
    config_from_dict,
    load_config,
)
from .graph import (
    EdgeListParseError,
    derive_degree_rank_subgraph,
    generate_er,
    load_edge_list,
    serialize_edge_list,
)

DEFAULT_SEED = 42
_SCHEME_HELP = {
    "no-a": "leave the topology unchanged",
    "random-a": "same-package sweep, then random cross-package replacement edges",
    "random-graph-c": "shuffle each node to its least common neighboring package",
    "sda": "diversity-driven sweep and budgeted rewiring (uses --rho)",
}


def _default_seed() -> int:
    env = os.environ.get("DIVERSINET_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ConfigError(f"DIVERSINET_SEED must be an integer, got {env!r}") from None
    return DEFAULT_SEED


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file (flags override its fields)")
    p.add_argument("--seed", type=int, help="base seed (default 42 or $DIVERSINET_SEED)")
    p.add_argument("--scheme", choices=experiment.SCHEMES)
    p.add_argument("--rho", type=float)
    p.add_argument("--pa", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--ns", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--n-r", type=int, dest="n_r")
    p.add_argument("--fp-mode", choices=("on", "off"), dest="fp_mode")
    p.add_argument("--pv-k1-mode", choices=("override", "literal"), dest="pv_k1_mode")
    p.add_argument("--eab-base", choices=("prose", "literal"), dest="eab_base")
    p.add_argument("--er", nargs=2, metavar=("N", "P"), help="ER network source")
    p.add_argument("--network-file", metavar="PATH", help="edge-list network source")
    p.add_argument(
        "--derived",
        nargs=3,
        metavar=("PATH", "LO", "HI"),
        help="degree-rank derived network source",
    )
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p.add_argument("--timing", action="store_true", help="record wall time per run in the ms column")


def _network_override(args: argparse.Namespace) -> dict | None:
    picked = [x for x in (args.er, args.network_file, args.derived) if x]
    if len(picked) > 1:
        raise ConfigError("give at most one of --er, --network-file, --derived")
    if args.er:
        return {"kind": "er", "n": int(args.er[0]), "p": float(args.er[1])}
    if args.network_file:
        return {"kind": "file", "path": args.network_file}
    if args.derived:
        return {
            "kind": "derived",
            "path": args.derived[0],
            "lo": int(args.derived[1]),
            "hi": int(args.derived[2]),
        }
    return None


def _build_config(args: argparse.Namespace) -> ExperimentConfig:
    overrides = {
        name: getattr(args, name)
        for name in (
            "scheme", "rho", "pa", "gamma", "ns", "k", "l", "n_r",
            "fp_mode", "pv_k1_mode", "eab_base",
        )
        if getattr(args, name, None) is not None
    }
    overrides["base_seed"] = args.seed if args.seed is not None else _default_seed()
    net = _network_override(args)
    if net is not None:
        overrides["network"] = net
    if args.config:
        return load_config(args.config, overrides)
    return config_from_dict({}, overrides)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = _build_config(args)
    rows = experiment.run_batch(cfg, jobs=args.jobs, timing=args.timing)
    _emit(experiment.format_raw_csv(rows), args.out)
    return 0


def _parse_values(axis: str, text: str) -> list:
    caster = int if axis in ("ns", "k", "l") else float
    try:
        return [caster(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ConfigError(f"--values must be comma-separated numbers, got {text!r}") from None


def _cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _build_config(args)
    values = _parse_values(args.axis, args.values)
    rows, aggs = experiment.run_sweep(cfg, args.axis, values, jobs=args.jobs, timing=args.timing)
    if args.raw_out:
        Path(args.raw_out).write_text(experiment.format_raw_csv(rows), encoding="utf-8")
    _emit(experiment.format_aggregate_csv(aggs), args.out)
    return 0


def _cmd_gen_er(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    rng = experiment._stream(seed, experiment._STREAM_GRAPH)
    g = generate_er(args.n, args.p, rng)
    _emit(serialize_edge_list(g), args.out)
    return 0


def _cmd_derive(args: argparse.Namespace) -> int:
    text = Path(args.input).read_text(encoding="utf-8")
    g = load_edge_list(text)
    sub = derive_degree_rank_subgraph(g, args.lo, args.hi)
    _emit(serialize_edge_list(sub), args.out)
    return 0


def _cmd_schemes(args: argparse.Namespace) -> int:
    for token in experiment.SCHEMES:
        sys.stdout.write(f"{token}\t{_SCHEME_HELP[token]}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diversinet",
        description="Software-diversity network adaptation and epidemic attack simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="Monte Carlo runs of one configuration (raw CSV)")
    _add_config_flags(p_run)
    p_run.add_argument("--out", help="write raw CSV here instead of stdout")
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="sweep one parameter (aggregate CSV)")
    _add_config_flags(p_sweep)
    p_sweep.add_argument("--axis", required=True, choices=experiment.SWEEP_AXES)
    p_sweep.add_argument("--values", required=True, help="comma-separated axis values")
    p_sweep.add_argument("--out", help="write aggregate CSV here instead of stdout")
    p_sweep.add_argument("--raw-out", dest="raw_out", help="also write per-run raw CSV here")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_gen = sub.add_parser("gen-er", help="generate a random edge-list file")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--p", type=float, required=True)
    p_gen.add_argument("--seed", type=int)
    p_gen.add_argument("--out", help="output path (default stdout)")
    p_gen.set_defaults(func=_cmd_gen_er)

    p_der = sub.add_parser("derive", help="extract a degree-rank subgraph's largest component")
    p_der.add_argument("--in", dest="input", required=True, help="input edge-list file")
    p_der.add_argument("--lo", type=int, required=True, help="first degree rank (1-based)")
    p_der.add_argument("--hi", type=int, required=True, help="last degree rank (inclusive)")
    p_der.add_argument("--out", help="output path (default stdout)")
    p_der.set_defaults(func=_cmd_derive)

    p_sch = sub.add_parser("schemes", help="list adaptation scheme tokens")
    p_sch.set_defaults(func=_cmd_schemes)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        sys.stderr.write(f"{parser.prog}: error: {e}\n")
        sys.stderr.write(parser.format_usage())
        return 2
    except EdgeListParseError as e:
        sys.stderr.write(f"{parser.prog}: parse error: {e}\n")
        return 1
    except (OSError, ValueError) as e:
        sys.stderr.write(f"{parser.prog}: error: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())

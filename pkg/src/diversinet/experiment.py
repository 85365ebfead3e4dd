"""Experiment configuration, the single-run pipeline, parameter sweeps with
Monte Carlo repetition, and CSV emission.

Every run derives four independent random streams (package assignment, scheme,
attacker seeding, epidemic) from the base seed and run index, so results are
reproducible and unchanged by parallel execution.  Random networks are one
realization per configuration, derived from the base seed alone, so runs vary
packages and attacks over a fixed topology.
"""

from __future__ import annotations

import dataclasses
import json
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .adaptation import (
    diversity_adaptation,
    least_common_shuffle,
    no_adaptation,
    random_adaptation,
)
from .epidemic import run_epidemic
from .graph import Graph, derive_degree_rank_subgraph, generate_er, load_edge_list
from .metrics import MetricReport, metric_dc, metric_pc, metric_sg
from .paths import diversity_vector, mean_software_diversity
from .software import DEFAULT_SV, SoftwareCatalog, assign_packages, build_states, seed_attackers

__all__ = [
    "SCHEMES",
    "NetworkSource",
    "ExperimentConfig",
    "ResultRow",
    "AggregateRow",
    "ConfigError",
    "load_config",
    "config_to_dict",
    "run_once",
    "run_batch",
    "run_sweep",
    "aggregate",
    "format_raw_csv",
    "format_aggregate_csv",
    "RAW_HEADER",
    "AGGREGATE_HEADER",
    "SWEEP_AXES",
]

SCHEMES = ("no-a", "random-a", "random-graph-c", "sda")
SWEEP_AXES = ("rho", "pa", "ns", "p", "k", "l", "gamma")

RAW_HEADER = "scheme,axis,axis_value,run,seed,pc,sg,sd,dc,ms"
AGGREGATE_HEADER = (
    "scheme,axis,axis_value,n,pc_mean,pc_sd,sg_mean,sg_sd,sd_mean,sd_sd,dc_mean,dc_sd"
)

# stream ids for per-run substreams
_STREAM_ASSIGN = 0
_STREAM_SCHEME = 1
_STREAM_SEEDING = 2
_STREAM_EPIDEMIC = 3
_STREAM_GRAPH = 4


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class NetworkSource:
    """Where the topology comes from: an ER draw, a file, or a degree-rank
    derivation from a file."""

    kind: str  # "er" | "file" | "derived"
    n: int = 0
    p: float = 0.0
    path: str = ""
    lo: int = 0
    hi: int = 0

    def validate(self) -> None:
        if self.kind == "er":
            if self.n < 1:
                raise ConfigError("er network needs n >= 1")
            if not (0.0 <= self.p <= 1.0):
                raise ConfigError("er network needs p in [0, 1]")
        elif self.kind == "file":
            if not self.path:
                raise ConfigError("file network needs a path")
        elif self.kind == "derived":
            if not self.path:
                raise ConfigError("derived network needs a path")
            if not (1 <= self.lo <= self.hi):
                raise ConfigError("derived network needs 1 <= lo <= hi")
        else:
            raise ConfigError(f"unknown network kind {self.kind!r}")


@dataclass(frozen=True)
class ExperimentConfig:
    network: NetworkSource = NetworkSource("er", n=1000, p=0.025)
    ns: int = 5
    sv: tuple[float, ...] = DEFAULT_SV
    pa: float = 0.1
    gamma: float = 0.95
    k: int = 1
    l: int = 1
    rho: float = 0.0
    scheme: str = "no-a"
    n_r: int = 100
    base_seed: int = 42
    fp_mode: str = "on"
    pv_k1_mode: str = "override"
    eab_base: str = "literal"

    def validate(self) -> None:
        self.network.validate()
        if self.ns < 1:
            raise ConfigError("ns must be >= 1")
        if len(self.sv) < self.ns:
            raise ConfigError("sv must list at least ns vulnerabilities")
        if any(not (0.0 < v <= 1.0) for v in self.sv):
            raise ConfigError("sv entries must lie in (0, 1]")
        for name in ("pa", "gamma"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise ConfigError(f"{name} must lie in [0, 1]")
        if not (-1.0 <= self.rho <= 1.0):
            raise ConfigError("rho must lie in [-1, 1]")
        if self.k < 1 or self.l < 1:
            raise ConfigError("k and l must be >= 1")
        if self.n_r < 1:
            raise ConfigError("n_r must be >= 1")
        if self.scheme not in SCHEMES:
            raise ConfigError(f"unknown scheme {self.scheme!r}; options: {', '.join(SCHEMES)}")
        if self.fp_mode not in ("on", "off"):
            raise ConfigError("fp_mode must be 'on' or 'off'")
        if self.pv_k1_mode not in ("override", "literal"):
            raise ConfigError("pv_k1_mode must be 'override' or 'literal'")
        if self.eab_base not in ("prose", "literal"):
            raise ConfigError("eab_base must be 'prose' or 'literal'")

    def catalog(self) -> SoftwareCatalog:
        return SoftwareCatalog(self.ns, tuple(self.sv[: self.ns]))


@dataclass(frozen=True)
class ResultRow:
    scheme: str
    axis: str
    axis_value: object
    run: int
    seed: int
    pc: float
    sg: float
    sd: float
    dc: float
    ms: float | None = None


@dataclass(frozen=True)
class AggregateRow:
    scheme: str
    axis: str
    axis_value: object
    n: int
    pc_mean: float
    pc_sd: float
    sg_mean: float
    sg_sd: float
    sd_mean: float
    sd_sd: float
    dc_mean: float
    dc_sd: float


def load_config(path: str | Path, overrides: dict | None = None) -> ExperimentConfig:
    """Read a JSON config file and apply field overrides."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise ConfigError(f"invalid JSON in {path}: {e}") from None
    return config_from_dict(data, overrides)


def config_from_dict(data: dict, overrides: dict | None = None) -> ExperimentConfig:
    data = dict(data)
    if overrides:
        net_over = overrides.pop("network", None)
        if net_over is not None:
            data["network"] = net_over
        data.update({k: v for k, v in overrides.items() if v is not None})
    net = data.pop("network", None)
    if isinstance(net, dict):
        try:
            network = NetworkSource(**net)
        except TypeError as e:
            raise ConfigError(f"bad network block: {e}") from None
    elif isinstance(net, NetworkSource):
        network = net
    elif net is None:
        network = NetworkSource("er", n=1000, p=0.025)
    else:
        raise ConfigError("network must be an object")
    if "sv" in data:
        data["sv"] = tuple(float(v) for v in data["sv"])
    known = {f.name for f in dataclasses.fields(ExperimentConfig)}
    unknown = set(data) - known
    if unknown:
        raise ConfigError(f"unknown config fields: {', '.join(sorted(unknown))}")
    cfg = ExperimentConfig(network=network, **data)
    cfg.validate()
    return cfg


def config_to_dict(cfg: ExperimentConfig) -> dict:
    d = dataclasses.asdict(cfg)
    d["sv"] = list(cfg.sv)
    return d


def _stream(*key: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(key)))


@lru_cache(maxsize=8)
def _build_network(network: NetworkSource, base_seed: int) -> Graph:
    if network.kind == "er":
        return generate_er(network.n, network.p, _stream(base_seed, _STREAM_GRAPH))
    text = Path(network.path).read_text(encoding="utf-8")
    g = load_edge_list(text)
    if network.kind == "derived":
        g = derive_degree_rank_subgraph(g, network.lo, network.hi)
    return g


def _apply_scheme(
    cfg: ExperimentConfig,
    g: Graph,
    pkgs: np.ndarray,
    cat: SoftwareCatalog,
    rng: np.random.Generator,
) -> tuple[Graph, np.ndarray, int]:
    if cfg.scheme == "no-a":
        return no_adaptation(g), pkgs, 0
    if cfg.scheme == "random-a":
        return random_adaptation(g, pkgs, rng), pkgs, 0
    if cfg.scheme == "random-graph-c":
        new_pkgs, n_sf = least_common_shuffle(pkgs, g, cat)
        return g, new_pkgs, n_sf
    if cfg.scheme == "sda":
        adapted = diversity_adaptation(
            g, pkgs, cat, cfg.k, cfg.l, cfg.rho, cfg.pv_k1_mode, cfg.eab_base
        )
        return adapted, pkgs, 0
    raise ConfigError(f"unknown scheme {cfg.scheme!r}")


def run_once(
    cfg: ExperimentConfig,
    run_index: int,
    axis: str = "",
    axis_value: object = None,
    timing: bool = False,
) -> ResultRow:
    """One full pipeline run: build network, assign packages, adapt, seed
    attackers, run the epidemic, and score the outcome."""
    t0 = time.perf_counter()
    g0 = _build_network(cfg.network, cfg.base_seed)
    cat = cfg.catalog()

    pkgs = assign_packages(
        g0.node_count, cat, _stream(cfg.base_seed, run_index, _STREAM_ASSIGN)
    )
    g1, pkgs, n_sf = _apply_scheme(
        cfg, g0, pkgs, cat, _stream(cfg.base_seed, run_index, _STREAM_SCHEME)
    )
    states = build_states(pkgs, cat)
    seed_attackers(states, cfg.pa, _stream(cfg.base_seed, run_index, _STREAM_SEEDING))
    outcome = run_epidemic(
        g1, states, cat, cfg.gamma,
        _stream(cfg.base_seed, run_index, _STREAM_EPIDEMIC), cfg.fp_mode,
    )

    sd_vec = diversity_vector(outcome.final_graph, pkgs, cat, cfg.k, cfg.l)
    for s, v in zip(outcome.final_states, sd_vec):
        s.diversity = float(v)
    report = MetricReport(
        sd=mean_software_diversity(sd_vec),
        sg=metric_sg(outcome.final_graph, outcome.final_states),
        pc=metric_pc(outcome.final_states),
        dc=metric_dc(g0, outcome.final_graph, n_sf),
    )
    ms = (time.perf_counter() - t0) * 1000.0 if timing else None
    return ResultRow(
        scheme=cfg.scheme,
        axis=axis,
        axis_value=axis_value,
        run=run_index,
        seed=cfg.base_seed,
        pc=report.pc,
        sg=report.sg,
        sd=report.sd,
        dc=report.dc,
        ms=ms,
    )


def _run_task(task: tuple[ExperimentConfig, int, str, object, bool]) -> ResultRow:
    cfg, run_index, axis, axis_value, timing = task
    return run_once(cfg, run_index, axis, axis_value, timing)


def _execute(tasks: list[tuple], jobs: int) -> list[ResultRow]:
    if jobs <= 1 or len(tasks) <= 1:
        return [_run_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))


def run_batch(cfg: ExperimentConfig, jobs: int = 1, timing: bool = False) -> list[ResultRow]:
    """All n_r runs of a single configuration, ordered by run index."""
    cfg.validate()
    tasks = [(cfg, r, "", None, timing) for r in range(cfg.n_r)]
    return _execute(tasks, jobs)


def _with_axis_value(cfg: ExperimentConfig, axis: str, value: object) -> ExperimentConfig:
    if axis == "p":
        if cfg.network.kind != "er":
            raise ConfigError("axis 'p' requires an er network source")
        return dataclasses.replace(
            cfg, network=dataclasses.replace(cfg.network, p=float(value))
        )
    caster = int if axis in ("ns", "k", "l") else float
    return dataclasses.replace(cfg, **{axis: caster(value)})


def run_sweep(
    cfg: ExperimentConfig,
    axis: str,
    values: Sequence[object],
    jobs: int = 1,
    timing: bool = False,
) -> tuple[list[ResultRow], list[AggregateRow]]:
    """Cross product of axis values and run indices, plus per-value aggregates."""
    if axis not in SWEEP_AXES:
        raise ConfigError(f"unknown sweep axis {axis!r}; options: {', '.join(SWEEP_AXES)}")
    if not values:
        raise ConfigError("sweep needs at least one value")
    tasks = []
    for value in values:
        cfg_v = _with_axis_value(cfg, axis, value)
        cfg_v.validate()
        for r in range(cfg.n_r):
            tasks.append((cfg_v, r, axis, value, timing))
    rows = _execute(tasks, jobs)
    aggs = []
    for idx, value in enumerate(values):
        chunk = rows[idx * cfg.n_r : (idx + 1) * cfg.n_r]
        aggs.append(aggregate(chunk))
    return rows, aggs


def aggregate(rows: Sequence[ResultRow]) -> AggregateRow:
    """Mean and sample standard deviation of each metric over result rows."""
    if not rows:
        raise ValueError("cannot aggregate zero rows")
    first = rows[0]

    def stats(values: list[float]) -> tuple[float, float]:
        m = statistics.fmean(values)
        s = statistics.stdev(values) if len(values) > 1 else 0.0
        return m, s

    pc_m, pc_s = stats([r.pc for r in rows])
    sg_m, sg_s = stats([r.sg for r in rows])
    sd_m, sd_s = stats([r.sd for r in rows])
    dc_m, dc_s = stats([r.dc for r in rows])
    return AggregateRow(
        scheme=first.scheme,
        axis=first.axis,
        axis_value=first.axis_value,
        n=len(rows),
        pc_mean=pc_m,
        pc_sd=pc_s,
        sg_mean=sg_m,
        sg_sd=sg_s,
        sd_mean=sd_m,
        sd_sd=sd_s,
        dc_mean=dc_m,
        dc_sd=dc_s,
    )


def _cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_raw_csv(rows: Iterable[ResultRow]) -> str:
    lines = [RAW_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                _cell(v)
                for v in (r.scheme, r.axis, r.axis_value, r.run, r.seed, r.pc, r.sg, r.sd, r.dc, r.ms)
            )
        )
    return "\n".join(lines) + "\n"


def format_aggregate_csv(rows: Iterable[AggregateRow]) -> str:
    lines = [AGGREGATE_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                _cell(v)
                for v in (
                    r.scheme, r.axis, r.axis_value, r.n,
                    r.pc_mean, r.pc_sd, r.sg_mean, r.sg_sd,
                    r.sd_mean, r.sd_sd, r.dc_mean, r.dc_sd,
                )
            )
        )
    return "\n".join(lines) + "\n"

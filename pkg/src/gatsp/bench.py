"""Multi-seed operator sweeps, summary statistics and CSV output."""
from __future__ import annotations

import csv
import logging
import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import product
from pathlib import Path
from typing import Sequence

import numpy as np

from .engine import ConfigError, GaConfig, RunResult, parse_kv, run_ga
from .operators import MutationKind
from .tsp import Instance, Metric, load_tsplib

log = logging.getLogger(__name__)

# default probability grid for sweeps: 0, 0.1, ..., 1.0
PROB_GRID = tuple(round(0.1 * k, 1) for k in range(11))
CSV_HEADER = ("operator", "px", "pm", "runs", "best", "mean", "median", "std")
HISTORY_HEADER = ("operator", "px", "pm", "generation", "mean_best")


@dataclass(frozen=True)
class SweepSpec:
    instance: str
    operators: tuple[MutationKind, ...] = (MutationKind.RSM,)
    crossover_probs: tuple[float, ...] = (0.9,)
    mutation_probs: tuple[float, ...] = (0.1,)
    runs: int = 50
    base_seed: int = 0
    base_config: GaConfig = field(default_factory=GaConfig)
    metric: Metric | None = None

    def __post_init__(self):
        ops = tuple(MutationKind.parse(o) for o in self.operators)
        if not ops:
            raise ConfigError("a sweep needs at least one mutation operator")
        object.__setattr__(self, "operators", ops)
        for name in ("crossover_probs", "mutation_probs"):
            probs = tuple(float(p) for p in getattr(self, name))
            if not probs:
                raise ConfigError(f"{name} must not be empty")
            if any(not 0.0 <= p <= 1.0 for p in probs):
                raise ConfigError(f"{name} values must lie in [0, 1]")
            object.__setattr__(self, name, probs)
        if self.runs < 1:
            raise ConfigError(f"runs must be >= 1, got {self.runs}")
        if self.metric is not None:
            object.__setattr__(self, "metric", Metric.parse(self.metric))

    def cells(self):
        return list(product(self.operators, self.crossover_probs, self.mutation_probs))

    def config_for(self, op: MutationKind, px: float, pm: float, run: int) -> GaConfig:
        # run i gets the same seed in every cell, so all operators start from
        # the same initial populations
        return replace(self.base_config, mutation=op, crossover_prob=px,
                       mutation_prob=pm, seed=self.base_seed + run)

    @classmethod
    def from_kv(cls, text: str, **overrides) -> "SweepSpec":
        """Build from ``key=value`` text: sweep keys plus any GaConfig key."""
        values = parse_kv(text)
        kwargs = {}
        if "instance" in values:
            kwargs["instance"] = values.pop("instance")
        if "mutations" in values:
            kwargs["operators"] = split_list(values.pop("mutations"))
        if "px" in values:
            kwargs["crossover_probs"] = parse_floats(values.pop("px"))
        if "pm" in values:
            kwargs["mutation_probs"] = parse_floats(values.pop("pm"))
        try:
            if "runs" in values:
                kwargs["runs"] = int(values.pop("runs"))
            if "seed" in values:
                kwargs["base_seed"] = int(values.pop("seed"))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if "metric" in values:
            kwargs["metric"] = values.pop("metric")
        kwargs["base_config"] = GaConfig().updated(values)
        kwargs.update(overrides)
        if "instance" not in kwargs:
            raise ConfigError("sweep spec needs an instance")
        return cls(**kwargs)


@dataclass(frozen=True)
class CellStats:
    operator: str
    px: float
    pm: float
    runs: int
    best: float
    mean: float
    median: float
    std: float
    mean_history: tuple[float, ...] = ()


def split_list(text: str) -> list[str]:
    return [s for s in (p.strip() for p in text.split(",")) if s]


def parse_floats(text: str) -> tuple[float, ...]:
    """Comma-separated probabilities; ``grid`` expands to 0, 0.1, ..., 1."""
    if text.strip().lower() == "grid":
        return PROB_GRID
    try:
        return tuple(float(s) for s in split_list(text))
    except ValueError:
        raise ConfigError(f"expected a comma-separated list of numbers, got {text!r}") from None


def summarize(costs: Sequence[float]) -> tuple[float, float, float, float]:
    """``(min, mean, median, std)``; std is the population standard deviation."""
    if len(costs) == 0:
        raise ValueError("summarize needs at least one value")
    values = list(costs)
    return (min(values), statistics.fmean(values), statistics.median(values),
            statistics.pstdev(values))


def _run_one(args) -> RunResult:
    inst, cfg = args
    return run_ga(inst, cfg)


def run_cells(spec: SweepSpec, jobs: int = 1,
              instance: Instance | None = None) -> dict[tuple, RunResult]:
    """Every run of every cell, keyed by ``((operator, px, pm), run)``."""
    inst = instance if instance is not None else load_tsplib(spec.instance, spec.metric)
    tasks = [(cell, run) for cell in spec.cells() for run in range(spec.runs)]
    work = [(inst, spec.config_for(*cell, run)) for cell, run in tasks]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, work, chunksize=max(1, len(work) // (4 * jobs))))
    else:
        results = [_run_one(w) for w in work]
    return dict(zip(tasks, results))


def aggregate(spec: SweepSpec, results: dict[tuple, RunResult]) -> list[CellStats]:
    stats = []
    for cell in spec.cells():
        op, px, pm = cell
        runs = [results[cell, r] for r in range(spec.runs)]
        best, mean, median, std = summarize([r.best_cost for r in runs])
        history = np.array([r.history for r in runs], dtype=float).mean(axis=0)
        stats.append(CellStats(op.value, px, pm, spec.runs, best, mean, median, std,
                               tuple(history.tolist())))
        log.info("%s px=%g pm=%g median=%g best=%g", op.value, px, pm, median, best)
    return stats


def run_sweep(spec: SweepSpec, jobs: int = 1,
              instance: Instance | None = None) -> list[CellStats]:
    """Run every (operator, P_x, P_m) cell ``spec.runs`` times and summarize.

    Results are keyed by (cell, run) before aggregation, so the output does
    not depend on ``jobs``.
    """
    return aggregate(spec, run_cells(spec, jobs, instance))


def _num(v) -> str:
    if isinstance(v, (int, np.integer)) or (isinstance(v, float) and v.is_integer()
                                            and math.isfinite(v)):
        return str(int(v))
    return repr(float(v))


def history_path(path: "str | Path") -> Path:
    path = Path(path)
    return path.with_name(path.name + ".history.csv")


def emit_csv(stats: Sequence[CellStats], path: "str | Path") -> None:
    """Write the summary CSV and its ``<path>.history.csv`` companion."""
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(CSV_HEADER)
            for s in stats:
                w.writerow([s.operator, _num(s.px), _num(s.pm), s.runs,
                            _num(s.best), _num(s.mean), _num(s.median), _num(s.std)])
        with history_path(path).open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(HISTORY_HEADER)
            for s in stats:
                for g, v in enumerate(s.mean_history):
                    w.writerow([s.operator, _num(s.px), _num(s.pm), g, _num(v)])
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def read_csv(path: "str | Path") -> list[CellStats]:
    """Inverse of :func:`emit_csv` (the history file is optional)."""
    path = Path(path)
    histories: dict[tuple, list[float]] = {}
    hpath = history_path(path)
    if hpath.exists():
        with hpath.open(newline="") as fh:
            for row in csv.DictReader(fh):
                key = (row["operator"], float(row["px"]), float(row["pm"]))
                histories.setdefault(key, []).append(float(row["mean_best"]))
    out = []
    with path.open(newline="") as fh:
        for row in csv.DictReader(fh):
            key = (row["operator"], float(row["px"]), float(row["pm"]))
            best = float(row["best"])
            out.append(CellStats(
                row["operator"], key[1], key[2], int(row["runs"]),
                int(best) if best.is_integer() else best,
                float(row["mean"]), float(row["median"]), float(row["std"]),
                tuple(histories.get(key, ()))))
    return out

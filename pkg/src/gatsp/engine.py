"""Generational GA with roulette parents, OX, mutation and elitist insertion.

Randomness comes from a single :class:`numpy.random.Generator` (PCG64)
seeded with ``GaConfig.seed``; the order of draws is fixed, so a seed
reproduces a run exactly.
"""
from __future__ import annotations

import enum
import json
from dataclasses import asdict, dataclass, replace
from typing import Mapping, Sequence

import numpy as np

from .operators import (MutationKind, apply_mutation, force_mutation, random_ox,
                        selection_weights)
from .tsp import Instance, Tour, TSPError, batch_cost, validate_tour

SEED_MASK = (1 << 64) - 1


class ConfigError(TSPError):
    pass


class InitMethod(enum.Enum):
    RANDOM = "random"
    MUTATE_FROM_RANDOM = "mutate_random"
    MUTATE_FROM_NN = "mutate_nn"

    @classmethod
    def parse(cls, value: "str | InitMethod") -> "InitMethod":
        if isinstance(value, InitMethod):
            return value
        key = str(value).strip().lower()
        for m in cls:
            if key in (m.value, m.name.lower()):
                return m
        raise ConfigError(f"unknown init method {value!r}")


@dataclass(frozen=True)
class GaConfig:
    pop_size: int = 100
    generations: int = 2000
    crossover_prob: float = 0.9
    mutation_prob: float = 0.1
    mutation: MutationKind = MutationKind.RSM
    init_method: InitMethod = InitMethod.RANDOM
    elite_count: int | None = None
    seed: int = 0

    def __post_init__(self):
        try:
            object.__setattr__(self, "mutation", MutationKind.parse(self.mutation))
        except TSPError as exc:
            raise ConfigError(str(exc)) from None
        object.__setattr__(self, "init_method", InitMethod.parse(self.init_method))
        for name in ("pop_size", "generations", "elite_count", "seed"):
            value = getattr(self, name)
            if name == "elite_count" and value is None:
                continue
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise ConfigError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        object.__setattr__(self, "seed", self.seed & SEED_MASK)
        if self.pop_size < 2:
            raise ConfigError(f"pop_size must be >= 2, got {self.pop_size}")
        if self.generations < 0:
            raise ConfigError(f"generations must be >= 0, got {self.generations}")
        if not 1 <= self.n_elite < self.pop_size:
            raise ConfigError(f"elite_count must lie in 1..pop_size-1, got {self.elite_count}")
        for name in ("crossover_prob", "mutation_prob"):
            p = float(getattr(self, name))
            if not 0.0 <= p <= 1.0:
                raise ConfigError(f"{name} must lie in [0, 1], got {p}")
            object.__setattr__(self, name, p)

    @property
    def n_elite(self) -> int:
        """Elite slots per generation; ``elite_count=None`` means half the population."""
        if self.elite_count is None:
            # a single elite leaves almost no selection pressure: the roulette
            # weights are near uniform for populations of realistic size
            return max(1, self.pop_size // 2)
        return self.elite_count

    # flat key=value form shared by the CLI and sweep files
    _KEYS = {
        "pop_size": "pop_size",
        "generations": "generations",
        "crossover_prob": "crossover_prob",
        "mutation_prob": "mutation_prob",
        "mutation": "mutation",
        "init": "init_method",
        "elite": "elite_count",
        "seed": "seed",
    }

    def to_kv(self) -> str:
        values = {
            "pop_size": self.pop_size,
            "generations": self.generations,
            "crossover_prob": repr(self.crossover_prob),
            "mutation_prob": repr(self.mutation_prob),
            "mutation": self.mutation.value,
            "init": self.init_method.value,
            "elite": "auto" if self.elite_count is None else self.elite_count,
            "seed": self.seed,
        }
        return "".join(f"{k}={v}\n" for k, v in values.items())

    @classmethod
    def from_kv(cls, text: str, base: "GaConfig | None" = None) -> "GaConfig":
        return (base or cls()).updated(parse_kv(text))

    def updated(self, values: Mapping[str, str]) -> "GaConfig":
        """Copy with fields replaced from flat ``key -> text`` pairs."""
        changes = {}
        for key, raw in values.items():
            if key not in self._KEYS:
                raise ConfigError(f"unknown config key {key!r}")
            name = self._KEYS[key]
            try:
                if name == "elite_count" and raw.strip().lower() in ("", "auto"):
                    changes[name] = None
                elif name in ("pop_size", "generations", "elite_count", "seed"):
                    changes[name] = int(raw)
                elif name in ("crossover_prob", "mutation_prob"):
                    changes[name] = float(raw)
                else:
                    changes[name] = raw
            except ValueError:
                raise ConfigError(f"bad value for {key}: {raw!r}") from None
        return replace(self, **changes)


def parse_kv(text: str) -> dict[str, str]:
    """Parse ``key=value`` lines; blank lines and ``#`` comments are skipped."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key] = value
    return out


@dataclass
class Population:
    tours: list[Tour]
    costs: np.ndarray

    def __len__(self):
        return len(self.tours)

    def best_index(self) -> int:
        # argmin returns the first minimum, i.e. the earliest index on ties
        return int(np.argmin(self.costs))

    def validate(self, inst: Instance) -> None:
        if len(self.tours) != len(self.costs):
            raise TSPError("population tours and costs differ in length")
        for t in self.tours:
            problem = validate_tour(t, inst.n)
            if problem is not None:
                raise TSPError(f"invalid tour in population: {problem}")


@dataclass(frozen=True)
class RunResult:
    best_tour: Tour
    best_cost: float
    history: tuple
    evaluations: int

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"))


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed) & SEED_MASK))


def _scalar(inst: Instance, value):
    return int(value) if inst.rounded else float(value)


def evaluate(inst: Instance, tours: Sequence[Tour]) -> np.ndarray:
    return batch_cost(inst, np.array(tours, dtype=np.intp))


def nearest_neighbor_tour(inst: Instance, start: int = 1) -> Tour:
    """Greedy tour from ``start``; ties go to the lowest city index."""
    n = inst.n
    d = inst.distance_matrix()
    visited = np.zeros(n, dtype=bool)
    cur = start - 1
    visited[cur] = True
    order = [start]
    for _ in range(n - 1):
        row = np.where(visited, np.inf, d[cur])
        cur = int(np.argmin(row))
        visited[cur] = True
        order.append(cur + 1)
    return tuple(order)


def _random_tour(n: int, rng: np.random.Generator) -> Tour:
    return tuple((rng.permutation(n) + 1).tolist())


def init_population(inst: Instance, cfg: GaConfig, rng: np.random.Generator) -> Population:
    n = inst.n
    if n < 3:
        raise TSPError(f"the GA needs at least 3 cities, got {n}")
    method = cfg.init_method
    if method is InitMethod.RANDOM:
        tours = [_random_tour(n, rng) for _ in range(cfg.pop_size)]
    else:
        if method is InitMethod.MUTATE_FROM_RANDOM:
            seed_tour = _random_tour(n, rng)
        else:
            seed_tour = nearest_neighbor_tour(inst)
        # a forced PSM scan at probability 0 would never move a gene
        gene_prob = cfg.mutation_prob or 1.0 / n
        tours = [seed_tour] + [force_mutation(cfg.mutation, seed_tour, rng, gene_prob)
                               for _ in range(cfg.pop_size - 1)]
    return Population(tours, evaluate(inst, tours))


def _roulette_without_replacement(weights: np.ndarray, k: int,
                                  rng: np.random.Generator) -> np.ndarray:
    """Indices of ``k`` successive roulette draws, each removing the winner.

    Uses exponential keys ``log(u) / w``: the top-``k`` keys in descending
    order have exactly the distribution of sequential roulette sampling.
    """
    u = rng.random(weights.size)
    with np.errstate(divide="ignore"):
        keys = np.log(u) / weights
    return np.argsort(-keys, kind="stable")[:k]


def evolve_generation(pop: Population, inst: Instance, cfg: GaConfig,
                      rng: np.random.Generator) -> Population:
    size = len(pop)
    n_pairs = (size + 1) // 2
    cum = np.cumsum(selection_weights(pop.costs))
    parents = np.minimum(np.searchsorted(cum, rng.random(2 * n_pairs), side="right"), size - 1)
    parents = parents.tolist()

    kind, p_x, p_m = cfg.mutation, cfg.crossover_prob, cfg.mutation_prob
    offspring: list[Tour] = []
    for k in range(n_pairs):
        p1, p2 = pop.tours[parents[2 * k]], pop.tours[parents[2 * k + 1]]
        if rng.random() < p_x:
            c1, c2 = random_ox(p1, p2, rng)
        else:
            c1, c2 = p1, p2
        offspring.append(apply_mutation(kind, c1, p_m, rng))
        offspring.append(apply_mutation(kind, c2, p_m, rng))
    del offspring[size:]
    off_costs = evaluate(inst, offspring)

    union = pop.tours + offspring
    union_costs = np.concatenate([pop.costs, off_costs])
    elite = np.argsort(union_costs, kind="stable")[:cfg.n_elite]
    rest = np.setdiff1d(np.arange(union_costs.size), elite)
    w = selection_weights(union_costs)[rest]
    chosen = rest[_roulette_without_replacement(w / w.sum(), size - cfg.n_elite, rng)]
    keep = np.concatenate([elite, chosen])
    return Population([union[i] for i in keep.tolist()], union_costs[keep])


def run_ga(inst: Instance, cfg: GaConfig, *, keep_population: bool = False):
    """Run the GA for ``cfg.generations`` generations.

    Returns a :class:`RunResult`; with ``keep_population`` also the final
    :class:`Population` as a second value.
    """
    rng = make_rng(cfg.seed)
    pop = init_population(inst, cfg, rng)
    evaluations = len(pop)
    history = [pop.costs.min()]
    for _ in range(cfg.generations):
        pop = evolve_generation(pop, inst, cfg, rng)
        evaluations += cfg.pop_size
        history.append(pop.costs.min())
    b = pop.best_index()
    result = RunResult(
        best_tour=pop.tours[b],
        best_cost=_scalar(inst, pop.costs[b]),
        history=tuple(_scalar(inst, h) for h in history),
        evaluations=evaluations,
    )
    return (result, pop) if keep_population else result


"""Seedable genetic-algorithm toolkit for the Euclidean TSP."""
from .bench import CellStats, SweepSpec, emit_csv, read_csv, run_sweep, summarize
from .engine import (ConfigError, GaConfig, InitMethod, Population, RunResult, evolve_generation,
                     init_population, make_rng, nearest_neighbor_tour, run_ga)
from .estimator import ExactTSP, GeneticTSP
from .exact import ExactResult, SizeError, brute_force_optimal, held_karp_optimal
from .operators import (MutationKind, apply_mutation, mutate_cim, mutate_psm, mutate_rsm,
                        mutate_throas, mutate_thrors, mutate_twors, ox_crossover,
                        roulette_pick, selection_weights)
from .tsp import (City, Instance, Metric, TSPError, TSPLIBParseError, UnsupportedFormatError,
                  distance, dump_tsplib, load_berlin52, load_tsplib, parse_tsplib, tour_cost,
                  tour_space_size, validate_tour)

__version__ = "0.1.0"

__all__ = [
    "CellStats",
    "SweepSpec",
    "emit_csv",
    "read_csv",
    "run_sweep",
    "summarize",
    "ConfigError",
    "GaConfig",
    "InitMethod",
    "Population",
    "RunResult",
    "evolve_generation",
    "init_population",
    "make_rng",
    "nearest_neighbor_tour",
    "run_ga",
    "ExactTSP",
    "GeneticTSP",
    "ExactResult",
    "SizeError",
    "brute_force_optimal",
    "held_karp_optimal",
    "MutationKind",
    "apply_mutation",
    "mutate_cim",
    "mutate_psm",
    "mutate_rsm",
    "mutate_throas",
    "mutate_thrors",
    "mutate_twors",
    "ox_crossover",
    "roulette_pick",
    "selection_weights",
    "City",
    "Instance",
    "Metric",
    "TSPError",
    "TSPLIBParseError",
    "UnsupportedFormatError",
    "distance",
    "dump_tsplib",
    "load_berlin52",
    "load_tsplib",
    "parse_tsplib",
    "tour_cost",
    "tour_space_size",
    "validate_tour",
]

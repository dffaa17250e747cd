"""Command-line front end: ``gatsp solve|sweep|exact|info``."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .bench import SweepSpec, emit_csv, parse_floats, run_sweep, split_list
from .engine import ConfigError, GaConfig, run_ga
from .exact import BRUTE_FORCE_MAX, SizeError, brute_force_optimal, held_karp_optimal
from .operators import MutationKind
from .tsp import TSPError, TSPLIBParseError, berlin52_path, load_tsplib, tour_space_size

EXIT_OK, EXIT_CONFIG, EXIT_IO = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _instance_path(name: str) -> Path:
    path = Path(name)
    if not path.exists() and name.lower() == "berlin52":
        return berlin52_path()
    return path


def _load(args):
    return load_tsplib(_instance_path(args.instance), getattr(args, "metric", None))


def _fmt_cost(c) -> str:
    return str(c) if isinstance(c, int) else f"{c:.6f}"


def _config(args) -> GaConfig:
    cfg = GaConfig()
    if getattr(args, "config", None):
        cfg = GaConfig.from_kv(Path(args.config).read_text(), cfg)
    flags = {
        "pop_size": args.pop_size, "generations": args.generations,
        "crossover_prob": getattr(args, "px", None), "mutation_prob": getattr(args, "pm", None),
        "mutation": getattr(args, "mutation", None), "init": args.init,
        "elite": args.elite, "seed": getattr(args, "seed", None),
    }
    return cfg.updated({k: str(v) for k, v in flags.items() if v is not None})


def cmd_solve(args) -> int:
    inst = _load(args)
    cfg = _config(args)
    res = run_ga(inst, cfg)
    print(f"instance: {inst.name} (n={inst.n}, metric={inst.metric.value})")
    print(f"config: {cfg.to_kv().strip().replace(chr(10), ' ')}")
    print(f"best_cost: {_fmt_cost(res.best_cost)}")
    print("tour: " + " ".join(map(str, res.best_tour)))
    return EXIT_OK


def cmd_sweep(args) -> int:
    overrides = {}
    text = Path(args.spec).read_text() if args.spec else ""
    if args.instance:
        overrides["instance"] = str(_instance_path(args.instance))
    if args.mutations:
        overrides["operators"] = split_list(args.mutations)
    if args.px_list:
        overrides["crossover_probs"] = parse_floats(args.px_list)
    if args.pm_list:
        overrides["mutation_probs"] = parse_floats(args.pm_list)
    if args.runs is not None:
        overrides["runs"] = args.runs
    if args.seed is not None:
        overrides["base_seed"] = args.seed
    if args.metric:
        overrides["metric"] = args.metric
    spec = SweepSpec.from_kv(text, **overrides)
    flags = {"pop_size": args.pop_size, "generations": args.generations,
             "init": args.init, "elite": args.elite}
    spec = SweepSpec(**{**spec.__dict__, "base_config": spec.base_config.updated(
        {k: str(v) for k, v in flags.items() if v is not None})})
    stats = run_sweep(spec, jobs=args.jobs)
    emit_csv(stats, args.out)
    for s in stats:
        print(f"{s.operator} px={s.px:g} pm={s.pm:g} runs={s.runs} best={_fmt_cost(s.best)} "
              f"median={s.median:g} mean={s.mean:.1f} std={s.std:.1f}")
    print(f"wrote {args.out}")
    return EXIT_OK


def cmd_exact(args) -> int:
    inst = _load(args)
    method = args.method
    if method == "auto":
        method = "brute" if inst.n <= BRUTE_FORCE_MAX else "held-karp"
    res = (brute_force_optimal if method == "brute" else held_karp_optimal)(inst)
    print(f"method: {method}")
    print(f"cost: {_fmt_cost(res.cost)}")
    print("tour: " + " ".join(map(str, res.tour)))
    print(f"nodes_explored: {res.nodes_explored}")
    return EXIT_OK


def cmd_info(args) -> int:
    inst = _load(args)
    print(f"name: {inst.name}")
    print(f"n={inst.n}")
    print(f"metric: {inst.metric.value}")
    if 3 <= inst.n <= 20:
        print(f"tour_space_size: {tour_space_size(inst.n)}")
    return EXIT_OK


def _ga_flags(p, single_run: bool) -> None:
    p.add_argument("--pop-size", type=int)
    p.add_argument("--generations", type=int)
    p.add_argument("--init", choices=["random", "mutate_random", "mutate_nn"])
    p.add_argument("--elite", help="elite slots per generation (default: half the population)")
    if single_run:
        p.add_argument("--px", type=float, help="crossover probability")
        p.add_argument("--pm", type=float, help="mutation probability")
        p.add_argument("--mutation", choices=[m.value for m in MutationKind])
        p.add_argument("--seed", type=int)
        p.add_argument("--config", help="key=value config file; flags override it")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gatsp", description="Genetic algorithm toolkit for the Euclidean TSP.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    metric = dict(choices=["rounded", "real"], help="override the instance metric")

    p = sub.add_parser("solve", help="one GA run")
    p.add_argument("--instance", required=True, help="TSPLIB file (or 'berlin52')")
    p.add_argument("--metric", **metric)
    _ga_flags(p, single_run=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="multi-seed operator/probability sweep")
    p.add_argument("--instance")
    p.add_argument("--spec", help="key=value sweep file; flags override it")
    p.add_argument("--mutations", help="comma list, e.g. rsm,psm,twors")
    p.add_argument("--px-list", help="comma list of crossover probabilities, or 'grid'")
    p.add_argument("--pm-list", help="comma list of mutation probabilities, or 'grid'")
    p.add_argument("--runs", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--metric", **metric)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", required=True)
    _ga_flags(p, single_run=False)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("exact", help="exact optimum for small instances")
    p.add_argument("--instance", required=True)
    p.add_argument("--metric", **metric)
    p.add_argument("--method", choices=["auto", "brute", "held-karp"], default="auto")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("info", help="instance summary")
    p.add_argument("--instance", required=True)
    p.add_argument("--metric", **metric)
    p.set_defaults(func=cmd_info)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_CONFIG
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (TSPLIBParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConfigError, SizeError, TSPError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

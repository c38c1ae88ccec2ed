"""
Command-line harness.

    python -m app run --network feeder12 --algo mads --budget 500 --seed 7 --trace t.csv --frontier f.json
    python -m app enumerate --network feeder12 --frontier exact.json
    python -m app compare --network feeder12 --budget 512 --seeds 0 1 2 3

stdout carries the one-line summary (or the comparison JSON); diagnostics go
to stderr. Exit codes: 0 success, 2 invalid configuration or input,
3 simulation or evaluator failure.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from app import __version__
from app.config import configure_logging, settings
from app.exceptions import ConfigurationError, SimulationError
from app.harness.artifacts import format_report, write_frontier, write_report, write_trace
from app.harness.comparison import compare_runs
from app.harness.enumeration import enumerate_all
from app.models import Algorithm, HarnessConfig
from app.network_loader import load_network
from app.optimizer.mads import run_mads
from app.optimizer.polling import PollOrder
from app.optimizer.random_search import run_random_search
from app.optimizer.results import IncumbentPolicy
from app.simulation.evaluator import FeederEvaluator

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SIMULATION = 3

# value of a file option given without a path: write under FEEDER_OUTPUT_DIR
DEFAULT_LOCATION = ""


def _add_search_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--budget", type=int, default=None,
                        help=f"evaluation budget (default {settings.DEFAULT_BUDGET})")
    parser.add_argument("--poll-order", choices=[o.value for o in PollOrder], default=PollOrder.LEXICOGRAPHIC.value)
    parser.add_argument("--incumbent", choices=[p.value for p in IncumbentPolicy],
                        default=IncumbentPolicy.ROUND_ROBIN.value)
    parser.add_argument("--mesh-adaptive", action="store_true",
                        help="grow the poll radius after successful polls")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="python -m app", description="Feeder reconfiguration optimizer")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help=f"logging level (default {settings.LOG_LEVEL})")
    subparsers = parser.add_subparsers(dest="command", required=True)

    run = subparsers.add_parser("run", help="run MADS or random search on a network")
    run.add_argument("--network", required=True, help="network file or bundled network name")
    run.add_argument("--algo", choices=[Algorithm.MADS.value, Algorithm.RANDOM.value], default=Algorithm.MADS.value)
    run.add_argument("--seed", type=int, default=None, help=f"run seed (default {settings.DEFAULT_SEED})")
    _add_search_options(run)
    run.add_argument("--trace", nargs="?", const=DEFAULT_LOCATION,
                     help="trace CSV path (bare flag: under FEEDER_OUTPUT_DIR)")
    run.add_argument("--trace-skipped", action="store_true", help="include discarded poll points in the trace")
    run.add_argument("--frontier", nargs="?", const=DEFAULT_LOCATION,
                     help="frontier JSON path (bare flag: under FEEDER_OUTPUT_DIR)")
    run.set_defaults(handler=_run)

    enumerate_ = subparsers.add_parser("enumerate", help="evaluate every configuration (n <= 20)")
    enumerate_.add_argument("--network", required=True)
    enumerate_.add_argument("--trace", nargs="?", const=DEFAULT_LOCATION, help="per-configuration CSV path")
    enumerate_.add_argument("--frontier", nargs="?", const=DEFAULT_LOCATION, help="exact frontier JSON path")
    enumerate_.set_defaults(handler=_enumerate)

    compare = subparsers.add_parser("compare", help="MADS vs. random search over several seeds")
    compare.add_argument("--network", required=True)
    compare.add_argument("--seeds", type=int, nargs="+", default=None,
                         help=f"run seeds (default {settings.DEFAULT_SEED})")
    _add_search_options(compare)
    compare.add_argument("--workers", type=int, default=1, help="seeds run concurrently")
    compare.add_argument("--report", nargs="?", const=DEFAULT_LOCATION,
                         help="report JSON path (bare flag: under FEEDER_OUTPUT_DIR; default: stdout)")
    compare.set_defaults(handler=_compare)
    return parser


def _output_path(value: Optional[str], network: str, name: str) -> Optional[str]:
    """A file option given without a path lands in FEEDER_OUTPUT_DIR as <network>_<name>"""
    if value != DEFAULT_LOCATION:
        return value
    return str(settings.OUTPUT_DIR / f"{Path(network).stem}_{name}")


def _harness_config(args: argparse.Namespace, algorithm: Algorithm) -> HarnessConfig:
    options = {
        "network_path": args.network,
        "algorithm": algorithm,
        "budget": getattr(args, "budget", None),
        "seed": getattr(args, "seed", None),
        "poll_order": getattr(args, "poll_order", None),
        "incumbent_policy": getattr(args, "incumbent", None),
        "mesh_adaptive": getattr(args, "mesh_adaptive", None),
        "trace_path": _output_path(getattr(args, "trace", None), args.network, f"{algorithm.value}_trace.csv"),
        "frontier_path": _output_path(getattr(args, "frontier", None), args.network,
                                      f"{algorithm.value}_frontier.json"),
        "trace_skipped": getattr(args, "trace_skipped", None),
    }
    return HarnessConfig(**{key: value for key, value in options.items() if value is not None})


def _summary_line(evaluations: int, frontier_size: int, best: Optional[float], stop: str) -> str:
    best_text = f"{best:.6f}" if best is not None else "none"
    return f"evaluations={evaluations} frontier={frontier_size} best_feasible_f_kw={best_text} stop={stop}"


def _run(args: argparse.Namespace) -> int:
    config = _harness_config(args, Algorithm(args.algo))
    network = load_network(config.network_path)
    run_config = config.to_run_config(network.n_switches)
    evaluator = FeederEvaluator(network)

    if config.algorithm is Algorithm.MADS:
        result = run_mads(run_config, evaluator)
    else:
        result = run_random_search(run_config, evaluator)

    if config.trace_path:
        records = result.journal if config.trace_skipped else result.trace
        write_trace(records, config.trace_path, include_skipped=config.trace_skipped)
    if config.frontier_path:
        write_frontier(result.frontier, config.frontier_path)
    print(result.summary())
    return EXIT_OK


def _enumerate(args: argparse.Namespace) -> int:
    config = _harness_config(args, Algorithm.ENUMERATE)
    network = load_network(config.network_path)
    result = enumerate_all(network)

    if config.trace_path:
        write_trace(result.trace(), config.trace_path)
    if config.frontier_path:
        write_frontier(result.frontier, config.frontier_path)

    feasible = [m.f for _, m in result.feasible()]
    best = min(feasible) if feasible else None
    print(_summary_line(result.evaluations, len(result.frontier), best, "enumerated"))
    return EXIT_OK


def _compare(args: argparse.Namespace) -> int:
    config = _harness_config(args, Algorithm.MADS)
    network = load_network(config.network_path)
    seeds = args.seeds if args.seeds is not None else [config.seed]
    report = compare_runs(
        network,
        config.budget,
        seeds,
        poll_order=config.poll_order,
        incumbent_policy=config.incumbent_policy,
        mesh_adaptive=config.mesh_adaptive,
        workers=args.workers,
    )

    report_path = _output_path(args.report, config.network_path, "comparison.json")
    if report_path:
        write_report(report, report_path)
        mads, baseline = report.median["mads"], report.median["random"]
        print(f"seeds={len(report.seeds)} budget={report.budget} "
              f"mads_median_best_f_kw={mads.best_feasible_f_kw} random_median_best_f_kw={baseline.best_feasible_f_kw}")
    else:
        sys.stdout.write(format_report(report))
    return EXIT_OK


def run_cli(argv: Optional[List[str]] = None) -> int:
    """Parse argv, dispatch the subcommand and return the process exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse has already printed usage or help
        return EXIT_OK if e.code in (0, None) else EXIT_CONFIG

    try:
        configure_logging(args.log_level)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        return args.handler(args)
    except ConfigurationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except ValidationError as e:
        error = e.errors()[0]
        field = ".".join(str(part) for part in error["loc"]) or "options"
        print(f"error: {field}: {error['msg']}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except SimulationError as e:
        print(f"simulation failure: {e}", file=sys.stderr)
        logger.debug("simulation failure", exc_info=True)
        return EXIT_SIMULATION


def main() -> None:
    sys.exit(run_cli())

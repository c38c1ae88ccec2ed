"""
MADS against the uniform random-search baseline at equal evaluation budget.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence

import numpy as np

from app.config import settings
from app.exceptions import ConfigurationError
from app.models import AlgorithmRunSummary, ComparisonReport, MedianSummary, SeedComparison
from app.optimizer.mads import run_mads
from app.optimizer.polling import PollOrder
from app.optimizer.random_search import run_random_search
from app.optimizer.results import Evaluator, IncumbentPolicy, RunConfig, RunResult
from app.simulation.evaluator import FeederEvaluator
from app.simulation.network import NetworkModel

logger = logging.getLogger(__name__)


def summarize_run(result: RunResult) -> AlgorithmRunSummary:
    return AlgorithmRunSummary(
        best_feasible_f_kw=result.best_feasible_f(),
        frontier_size=len(result.frontier),
        evaluations_used=result.evaluations_used,
        evaluations_to_first_feasible=result.evaluations_to_first_feasible(),
        stop_reason=result.stop_reason.value,
    )


def _median(values: Sequence[Optional[float]]) -> Optional[float]:
    """Median with missing values counted as +inf; an infinite median is reported as None"""
    data = np.array([math.inf if v is None else float(v) for v in values], dtype=float)
    median = float(np.median(data))
    return None if math.isinf(median) else median


def compare_runs(network: NetworkModel, budget: int, seeds: Sequence[int], *,
                 poll_order: PollOrder = PollOrder.LEXICOGRAPHIC,
                 incumbent_policy: IncumbentPolicy = IncumbentPolicy.ROUND_ROBIN,
                 mesh_adaptive: bool = False,
                 evaluator: Optional[Evaluator] = None,
                 workers: int = 1) -> ComparisonReport:
    """
    Run MADS and random search once per seed at the same budget.

    Args:
        network: Feeder to optimize
        budget: Evaluations per run, at least 1
        seeds: One or more run seeds
        evaluator: Black box to use instead of a FeederEvaluator on network
        workers: Seeds evaluated concurrently; the report does not depend on it

    Raises:
        ConfigurationError: budget < 1, no seeds, or workers < 1
    """
    if budget < 1:
        raise ConfigurationError(f"budget must be at least 1, got {budget}")
    if not seeds:
        raise ConfigurationError("compare needs at least one seed")
    if workers < 1:
        raise ConfigurationError(f"workers must be at least 1, got {workers}")

    def run_seed(seed: int) -> SeedComparison:
        config = RunConfig(
            dimension=network.n_switches,
            budget=budget,
            seed=seed,
            poll_order=poll_order,
            incumbent_policy=incumbent_policy,
            mesh_adaptive=mesh_adaptive,
            mesh_radius_cap=settings.MESH_RADIUS_CAP,
        )
        mads = run_mads(config, evaluator or FeederEvaluator(network))
        baseline = run_random_search(config, evaluator or FeederEvaluator(network))
        logger.info("seed %d: mads %s | random %s", seed, mads.summary(), baseline.summary())
        return SeedComparison(seed=seed, mads=summarize_run(mads), random=summarize_run(baseline))

    if workers == 1:
        per_seed = [run_seed(seed) for seed in seeds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_seed = list(pool.map(run_seed, seeds))

    median = {}
    for name in ("mads", "random"):
        runs: List[AlgorithmRunSummary] = [getattr(s, name) for s in per_seed]
        median[name] = MedianSummary(
            best_feasible_f_kw=_median([r.best_feasible_f_kw for r in runs]),
            evaluations_to_first_feasible=_median([r.evaluations_to_first_feasible for r in runs]),
            frontier_size=float(np.median([r.frontier_size for r in runs])),
        )

    return ComparisonReport(
        network=network.name or "network",
        budget=budget,
        seeds=list(seeds),
        per_seed=per_seed,
        median=median,
    )

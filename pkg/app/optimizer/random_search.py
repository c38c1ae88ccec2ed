"""
Uniform random-search baseline: draw switch vectors independently (with
replacement) from the seeded generator and keep the same frontier filter.
"""

import logging

import numpy as np

from app.optimizer.frontier_filter import FrontierFilter
from app.optimizer.results import Evaluator, RunConfig, RunResult, StopReason, TraceRecord, call_evaluator

logger = logging.getLogger(__name__)


def run_random_search(config: RunConfig, evaluator: Evaluator) -> RunResult:
    rng = np.random.default_rng(config.seed)
    frontier = FrontierFilter()
    trace = []

    for eval_index in range(1, config.budget + 1):
        candidate = tuple(int(b) for b in rng.integers(0, 2, size=config.dimension))
        metrics = call_evaluator(evaluator, candidate)
        decision = frontier.add(candidate, metrics)
        trace.append(TraceRecord(
            eval_index=eval_index,
            candidate=candidate,
            metrics=metrics,
            decision=decision,
            incumbent_id=None,
            filter_size_after=len(frontier),
        ))

    logger.info("random search used %d evaluations, frontier size %d", len(trace), len(frontier))
    return RunResult(
        frontier=frontier,
        trace=trace,
        evaluations_used=len(trace),
        stop_reason=StopReason.BUDGET,
        journal=list(trace),
    )

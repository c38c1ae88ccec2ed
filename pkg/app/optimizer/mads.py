"""
Mesh Adaptive Direct Search over binary switch vectors with a Pareto
frontier filter.

Each step picks an incumbent from the filter, polls its neighbours in a fixed
order and stops at the first candidate that changes the filter
(opportunistic polling). A run ends when the evaluation budget is spent or
every filter entry has been polled at unit radius without improvement.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Set, Tuple

import numpy as np

from app.exceptions import ConfigurationError, FrontierExhaustedError
from app.optimizer.frontier_filter import FilterDecision, FrontierFilter, Metrics, SwitchVector
from app.optimizer.polling import generate_poll_set
from app.optimizer.results import (
    Evaluator,
    IncumbentPolicy,
    RunConfig,
    RunResult,
    StopReason,
    TraceRecord,
    call_evaluator,
)

logger = logging.getLogger(__name__)


@dataclass
class OptimizerState:
    config: RunConfig
    filter: FrontierFilter = field(default_factory=FrontierFilter)
    incumbent_id: Optional[int] = None
    eval_count: int = 0
    polled_exhaustively: Set[int] = field(default_factory=set)
    mesh_radius: int = 1
    iteration: int = 0
    trace: List[TraceRecord] = field(default_factory=list)
    journal: List[TraceRecord] = field(default_factory=list)
    skipped_count: int = 0

    @property
    def budget(self) -> int:
        return self.config.budget

    @property
    def mesh_adaptive(self) -> bool:
        return self.config.mesh_adaptive

    @property
    def max_mesh_radius(self) -> int:
        return min(self.config.dimension, self.config.mesh_radius_cap)

    def all_exhausted(self) -> bool:
        return len(self.filter) > 0 and all(i in self.polled_exhaustively for i in self.filter.ids)


@dataclass(frozen=True)
class StepOutcome:
    incumbent_id: int
    radius: int
    evaluations: int
    skipped: int
    accepted: Optional[FilterDecision]
    incumbent_exhausted: bool


def select_incumbent(frontier: FrontierFilter, policy: IncumbentPolicy, polled_exhaustively: Set[int]) -> int:
    """
    Pick the entry to poll around next.

    Raises:
        FrontierExhaustedError: every entry has already been polled without improvement
    """
    candidates = [entry for entry in frontier if entry.id not in polled_exhaustively]
    if not candidates:
        raise FrontierExhaustedError("every frontier entry has been polled exhaustively")
    if policy is IncumbentPolicy.FEASIBILITY_FIRST:
        chosen = min(candidates, key=lambda e: (e.metrics.h, e.metrics.f, e.id))
    else:
        chosen = min(candidates, key=lambda e: e.id)
    return chosen.id


def _record(state: OptimizerState, candidate: SwitchVector, metrics: Metrics,
            decision: FilterDecision, incumbent_id: Optional[int]) -> None:
    record = TraceRecord(
        eval_index=state.eval_count,
        candidate=candidate,
        metrics=metrics,
        decision=decision,
        incumbent_id=incumbent_id,
        filter_size_after=len(state.filter),
    )
    state.trace.append(record)
    state.journal.append(record)


def initialize(config: RunConfig, evaluator: Evaluator) -> OptimizerState:
    """Evaluate a seeded uniform x_0 and seed the filter with it"""
    if config.budget < 1:
        raise ConfigurationError(f"MADS needs a budget of at least 1, got {config.budget}")
    rng = np.random.default_rng(config.seed)
    x0 = tuple(int(b) for b in rng.integers(0, 2, size=config.dimension))

    state = OptimizerState(config=config)
    metrics = call_evaluator(evaluator, x0)
    decision = state.filter.add(x0, metrics)
    state.eval_count = 1
    _record(state, x0, metrics, decision, None)
    state.incumbent_id = state.filter.ids[0]
    logger.info("initial candidate %s: f=%s h=%s", x0, metrics.f, metrics.h)
    return state


def mads_step(state: OptimizerState, evaluator: Evaluator) -> Tuple[OptimizerState, StepOutcome]:
    """
    Poll once around a freshly selected incumbent.

    Discarded (out-of-domain) points are journaled without using budget.
    The poll breaks at the first candidate that changes the filter; a poll
    that completes at unit radius without one marks the incumbent exhausted.
    Exhaustion marks are cleared whenever the filter changes.
    """
    policy = state.config.incumbent_policy
    incumbent_id = select_incumbent(state.filter, policy, state.polled_exhaustively)
    state.incumbent_id = incumbent_id
    incumbent = state.filter.get(incumbent_id)
    radius = state.mesh_radius

    poll = generate_poll_set(incumbent.x, state.config.poll_order, state.config.seed, radius, state.iteration)
    state.iteration += 1

    evaluations = 0
    skipped = 0
    accepted = None
    completed = True
    for point in poll:
        if point.discarded:
            skipped += 1
            state.skipped_count += 1
            state.journal.append(TraceRecord(
                eval_index=state.eval_count,
                candidate=point.point,
                metrics=None,
                decision=None,
                incumbent_id=incumbent_id,
                filter_size_after=len(state.filter),
                skip_reason="out of domain",
            ))
            logger.debug("discarded poll point %s (direction %s)", point.point, point.direction)
            continue
        if state.eval_count >= state.budget:
            completed = False
            break

        metrics = call_evaluator(evaluator, point.point)
        decision = state.filter.add(point.point, metrics)
        state.eval_count += 1
        evaluations += 1
        _record(state, point.point, metrics, decision, incumbent_id)
        logger.debug("eval %d %s: f=%s h=%s -> %s", state.eval_count, point.point,
                     metrics.f, metrics.h, decision.label)
        if decision.modified_filter:
            accepted = decision
            break

    exhausted = False
    if accepted is not None:
        state.polled_exhaustively.clear()
        if state.mesh_adaptive:
            state.mesh_radius = min(2 * radius, state.max_mesh_radius)
        logger.info("filter updated (%s), size %d after %d evaluations",
                    accepted.label, len(state.filter), state.eval_count)
    elif completed:
        if radius == 1:
            state.polled_exhaustively.add(incumbent_id)
            exhausted = True
        else:
            state.mesh_radius = max(1, radius // 2)

    outcome = StepOutcome(
        incumbent_id=incumbent_id,
        radius=radius,
        evaluations=evaluations,
        skipped=skipped,
        accepted=accepted,
        incumbent_exhausted=exhausted,
    )
    return state, outcome


def should_stop(state: OptimizerState) -> bool:
    """Budget spent, or every entry polled at unit radius without improvement"""
    return state.eval_count >= state.budget or state.all_exhausted()


def _finish(state: OptimizerState) -> RunResult:
    stop_reason = StopReason.EXHAUSTION if state.all_exhausted() else StopReason.BUDGET
    logger.info("MADS stopped (%s) after %d evaluations, frontier size %d",
                stop_reason.value, state.eval_count, len(state.filter))
    return RunResult(
        frontier=state.filter,
        trace=state.trace,
        evaluations_used=state.eval_count,
        stop_reason=stop_reason,
        journal=state.journal,
        skipped_count=state.skipped_count,
    )


def run_mads(config: RunConfig, evaluator: Evaluator) -> RunResult:
    """
    Run MADS from a seeded random start until should_stop.

    Identical (config, evaluator) pairs produce identical traces.
    """
    state = initialize(config, evaluator)
    while not should_stop(state):
        mads_step(state, evaluator)
    return _finish(state)

from app.optimizer.frontier_filter import (
    INFEASIBLE,
    DecisionKind,
    DominanceRelation,
    FilterDecision,
    FilterEntry,
    FrontierFilter,
    Metrics,
    compare,
    insert,
    is_pareto_consistent,
    pareto_front,
)
from app.optimizer.mads import OptimizerState, mads_step, run_mads, select_incumbent, should_stop
from app.optimizer.polling import PollOrder, PollPoint, generate_poll_set
from app.optimizer.random_search import run_random_search
from app.optimizer.results import IncumbentPolicy, RunConfig, RunResult, StopReason, TraceRecord

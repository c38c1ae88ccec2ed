"""
Run configuration, trace records and run results shared by MADS and the
random-search baseline.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Sequence, Tuple

from app.exceptions import ConfigurationError, EvaluatorError
from app.optimizer.frontier_filter import FilterDecision, FrontierFilter, Metrics, SwitchVector
from app.optimizer.polling import PollOrder

Evaluator = Callable[[SwitchVector], Metrics]

SKIPPED_INVALID = "skipped_invalid"


class IncumbentPolicy(str, Enum):
    ROUND_ROBIN = "round-robin"
    FEASIBILITY_FIRST = "feas-first"


class StopReason(str, Enum):
    BUDGET = "budget"
    EXHAUSTION = "exhaustion"


def as_switch_vector(bits: Sequence[int], n: Optional[int] = None) -> SwitchVector:
    """Normalize to a tuple of 0/1 ints, checking the length when n is given"""
    vector = tuple(int(b) for b in bits)
    if any(b not in (0, 1) for b in vector):
        raise ConfigurationError(f"switch vector entries must be 0 or 1: {vector}")
    if n is not None and len(vector) != n:
        raise ConfigurationError(f"switch vector has length {len(vector)}, expected {n}")
    return vector


def bits_to_string(bits: Sequence[int]) -> str:
    """0/1 string; out-of-domain poll coordinates render as '-' (below 0) or '+' (above 1)"""
    chars = []
    for b in bits:
        if b < 0:
            chars.append("-")
        elif b > 1:
            chars.append("+")
        else:
            chars.append(str(int(b)))
    return "".join(chars)


def parse_bits(text: str, n: Optional[int] = None) -> SwitchVector:
    text = text.strip()
    if any(c not in "01" for c in text):
        raise ConfigurationError(f"bit string must contain only 0 and 1: {text!r}")
    return as_switch_vector([int(c) for c in text], n)


@dataclass(frozen=True)
class RunConfig:
    """Options of one optimizer run; dimension is the switch count n"""
    dimension: int
    budget: int
    seed: int = 0
    poll_order: PollOrder = PollOrder.LEXICOGRAPHIC
    incumbent_policy: IncumbentPolicy = IncumbentPolicy.ROUND_ROBIN
    mesh_adaptive: bool = False
    mesh_radius_cap: int = 2

    def __post_init__(self):
        if self.dimension < 1:
            raise ConfigurationError("the network has no switchable branches to optimize")
        if self.budget < 0:
            raise ConfigurationError(f"budget must be nonnegative, got {self.budget}")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigurationError(f"seed must fit in an unsigned 64-bit integer, got {self.seed}")
        if self.mesh_radius_cap < 1:
            raise ConfigurationError("mesh radius cap must be at least 1")


@dataclass(frozen=True)
class TraceRecord:
    """
    One poll event. Evaluated records carry metrics and a filter decision;
    discarded poll points carry skip_reason instead and consume no budget.
    """
    eval_index: int
    candidate: Tuple[int, ...]
    metrics: Optional[Metrics]
    decision: Optional[FilterDecision]
    incumbent_id: Optional[int]
    filter_size_after: int
    skip_reason: Optional[str] = None

    @property
    def skipped(self) -> bool:
        return self.skip_reason is not None

    @property
    def decision_label(self) -> str:
        return SKIPPED_INVALID if self.skipped else self.decision.label


@dataclass
class RunResult:
    frontier: FrontierFilter
    trace: List[TraceRecord]
    evaluations_used: int
    stop_reason: StopReason
    journal: List[TraceRecord] = field(default_factory=list)
    skipped_count: int = 0

    def best_feasible_f(self) -> Optional[float]:
        entry = self.frontier.best_feasible()
        return entry.metrics.f if entry is not None else None

    def evaluations_to_first_feasible(self) -> Optional[int]:
        """1-based evaluation index of the first h = 0 candidate, None if never seen"""
        for record in self.trace:
            if record.metrics.is_feasible:
                return record.eval_index
        return None

    def summary(self) -> str:
        best = self.best_feasible_f()
        best_text = f"{best:.6f}" if best is not None else "none"
        return (f"evaluations={self.evaluations_used} frontier={len(self.frontier)} "
                f"best_feasible_f_kw={best_text} stop={self.stop_reason.value}")


def call_evaluator(evaluator: Evaluator, candidate: SwitchVector) -> Metrics:
    """Invoke the black box, attaching the candidate to any failure"""
    try:
        metrics = evaluator(candidate)
    except Exception as e:
        raise EvaluatorError(f"evaluator failed on {candidate}: {e}", candidate) from e
    if not isinstance(metrics, Metrics):
        raise EvaluatorError(f"evaluator returned {type(metrics).__name__}, expected Metrics", candidate)
    return metrics

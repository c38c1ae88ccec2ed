"""
Pareto frontier filter over (loss, violation) pairs.

A candidate dominates another when it is no worse in both the active-power
loss f and the aggregated violation h, and strictly better in at least one.
The filter keeps a set of mutually non-dominated entries in insertion order.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

# Loss reported for configurations the simulator cannot solve
INFEASIBLE = math.inf

SwitchVector = Tuple[int, ...]


@dataclass(frozen=True)
class Metrics:
    """Objective pair returned by the black box: f in kW, h dimensionless"""
    f: float
    h: float

    def __post_init__(self):
        if math.isnan(self.f) or math.isnan(self.h):
            raise ValueError(f"metrics must not be NaN: f={self.f}, h={self.h}")
        if self.f < 0:
            raise ValueError(f"loss must be nonnegative, got {self.f}")
        if self.h < 0 or math.isinf(self.h):
            raise ValueError(f"violation must be a finite nonnegative number, got {self.h}")

    @property
    def is_infeasible(self) -> bool:
        return self.f == INFEASIBLE

    @property
    def is_feasible(self) -> bool:
        """Finite loss and every operational limit satisfied"""
        return not self.is_infeasible and self.h == 0.0


class DominanceRelation(Enum):
    FIRST_DOMINATES = "first_dominates"
    SECOND_DOMINATES = "second_dominates"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def compare(a: Metrics, b: Metrics) -> DominanceRelation:
    """Classify the ordered pair (a, b) under weak dominance with one strict component"""
    if a.f == b.f and a.h == b.h:
        return DominanceRelation.EQUAL
    if a.f <= b.f and a.h <= b.h:
        return DominanceRelation.FIRST_DOMINATES
    if b.f <= a.f and b.h <= a.h:
        return DominanceRelation.SECOND_DOMINATES
    return DominanceRelation.INCOMPARABLE


def dominates(a: Metrics, b: Metrics) -> bool:
    return compare(a, b) is DominanceRelation.FIRST_DOMINATES


class DecisionKind(Enum):
    ADDED_NON_DOMINATING = "added"
    ADDED_REPLACING = "replaced"
    REJECTED = "rejected"
    REJECTED_DUPLICATE = "duplicate"


@dataclass(frozen=True)
class FilterDecision:
    """Outcome of offering one candidate to the filter"""
    kind: DecisionKind
    removed_ids: Tuple[int, ...] = ()
    other_id: Optional[int] = None

    def __post_init__(self):
        if self.kind is DecisionKind.ADDED_REPLACING and not self.removed_ids:
            raise ValueError("a replacing addition must remove at least one entry")

    @classmethod
    def added(cls) -> "FilterDecision":
        return cls(DecisionKind.ADDED_NON_DOMINATING)

    @classmethod
    def replacing(cls, removed_ids: Sequence[int]) -> "FilterDecision":
        return cls(DecisionKind.ADDED_REPLACING, removed_ids=tuple(removed_ids))

    @classmethod
    def rejected(cls, dominator_id: int) -> "FilterDecision":
        return cls(DecisionKind.REJECTED, other_id=dominator_id)

    @classmethod
    def duplicate(cls, existing_id: int) -> "FilterDecision":
        return cls(DecisionKind.REJECTED_DUPLICATE, other_id=existing_id)

    @property
    def modified_filter(self) -> bool:
        return self.kind in (DecisionKind.ADDED_NON_DOMINATING, DecisionKind.ADDED_REPLACING)

    @property
    def dominator_id(self) -> Optional[int]:
        return self.other_id if self.kind is DecisionKind.REJECTED else None

    @property
    def existing_id(self) -> Optional[int]:
        return self.other_id if self.kind is DecisionKind.REJECTED_DUPLICATE else None

    @property
    def label(self) -> str:
        return self.kind.value


@dataclass(frozen=True)
class FilterEntry:
    id: int
    x: SwitchVector
    metrics: Metrics


@dataclass
class FrontierFilter:
    """
    Archive of mutually non-dominated candidates.

    Entries stay in insertion order; ids start at 1 and grow by one for every
    accepted candidate, so they are never reused after a removal.
    """
    entries: List[FilterEntry] = field(default_factory=list)
    next_id: int = 1

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def ids(self) -> List[int]:
        return [entry.id for entry in self.entries]

    def get(self, entry_id: int) -> FilterEntry:
        for entry in self.entries:
            if entry.id == entry_id:
                return entry
        raise KeyError(f"no filter entry with id {entry_id}")

    def copy(self) -> "FrontierFilter":
        return FrontierFilter(entries=list(self.entries), next_id=self.next_id)

    def add(self, x: Sequence[int], m: Metrics) -> FilterDecision:
        """
        Offer a candidate, updating the filter in place.

        Precedence: exact metric duplicate, then rejection by a dominating
        entry, then replacement of every entry the candidate dominates, then
        plain addition.
        """
        dominated_ids = []
        for entry in self.entries:
            relation = compare(entry.metrics, m)
            if relation is DominanceRelation.EQUAL:
                return FilterDecision.duplicate(entry.id)
            if relation is DominanceRelation.FIRST_DOMINATES:
                return FilterDecision.rejected(entry.id)
            if relation is DominanceRelation.SECOND_DOMINATES:
                dominated_ids.append(entry.id)

        new_entry = FilterEntry(id=self.next_id, x=tuple(int(b) for b in x), metrics=m)
        self.next_id += 1
        if dominated_ids:
            removed = set(dominated_ids)
            self.entries = [entry for entry in self.entries if entry.id not in removed]
            self.entries.append(new_entry)
            logger.debug("entry %d (f=%s, h=%s) replaced %s", new_entry.id, m.f, m.h, dominated_ids)
            return FilterDecision.replacing(dominated_ids)

        self.entries.append(new_entry)
        logger.debug("entry %d (f=%s, h=%s) added", new_entry.id, m.f, m.h)
        return FilterDecision.added()

    def sorted_by_loss(self) -> List[FilterEntry]:
        """Entries ordered by f ascending (h descending along a valid frontier)"""
        return sorted(self.entries, key=lambda e: (e.metrics.f, e.metrics.h, e.id))

    def best_feasible(self) -> Optional[FilterEntry]:
        """Lowest-loss entry with h = 0, if any"""
        feasible = [e for e in self.entries if e.metrics.is_feasible]
        if not feasible:
            return None
        return min(feasible, key=lambda e: (e.metrics.f, e.id))


def insert(frontier: FrontierFilter, x: Sequence[int], m: Metrics) -> Tuple[FrontierFilter, FilterDecision]:
    """Value-semantics insert: the input filter is left untouched"""
    updated = frontier.copy()
    decision = updated.add(x, m)
    if not decision.modified_filter:
        return frontier, decision
    return updated, decision


def is_pareto_consistent(frontier: Iterable) -> bool:
    """True iff every pair of distinct entries is incomparable"""
    metrics = [entry.metrics if isinstance(entry, FilterEntry) else entry for entry in frontier]
    for i in range(len(metrics)):
        for j in range(i + 1, len(metrics)):
            if compare(metrics[i], metrics[j]) is not DominanceRelation.INCOMPARABLE:
                return False
    return True


def pareto_front(points: Sequence[Tuple[SwitchVector, Metrics]]) -> List[Tuple[SwitchVector, Metrics]]:
    """
    Exact non-dominated subset of a batch of evaluated points.

    Sort by (f, h) and sweep keeping strictly decreasing h; the stable sort
    keeps the earliest of several points with identical metrics.

    Returns:
        Frontier points ordered by f ascending
    """
    ordered = sorted(points, key=lambda p: (p[1].f, p[1].h))
    front = []
    best_h = math.inf
    for x, m in ordered:
        if m.h < best_h:
            front.append((x, m))
            best_h = m.h
    return front


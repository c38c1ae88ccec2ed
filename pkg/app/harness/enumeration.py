"""
Brute-force oracle: evaluate every configuration and extract the exact
Pareto frontier.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from app.config import settings
from app.exceptions import EnumerationLimitError
from app.optimizer.frontier_filter import FilterDecision, Metrics, SwitchVector, pareto_front
from app.optimizer.results import Evaluator, TraceRecord, call_evaluator
from app.simulation.evaluator import FeederEvaluator
from app.simulation.network import NetworkModel

logger = logging.getLogger(__name__)

EvaluatedPoint = Tuple[SwitchVector, Metrics]


@dataclass
class EnumerationResult:
    points: List[EvaluatedPoint]
    frontier: List[EvaluatedPoint]

    @property
    def evaluations(self) -> int:
        return len(self.points)

    def feasible(self) -> List[EvaluatedPoint]:
        return [(x, m) for x, m in self.points if m.is_feasible]

    def lookup(self) -> dict:
        """SwitchVector -> Metrics for every enumerated configuration"""
        return {x: m for x, m in self.points}

    def trace(self) -> List[TraceRecord]:
        """One record per configuration; frontier members are 'added', the rest 'rejected'"""
        members = {x for x, _ in self.frontier}
        size = len(self.frontier)
        return [
            TraceRecord(
                eval_index=index,
                candidate=x,
                metrics=m,
                decision=FilterDecision.added() if x in members else FilterDecision.rejected(None),
                incumbent_id=None,
                filter_size_after=size,
            )
            for index, (x, m) in enumerate(self.points, start=1)
        ]


def enumerate_all(network: NetworkModel, evaluator: Optional[Evaluator] = None) -> EnumerationResult:
    """
    Evaluate all 2^n switch vectors in lexicographic order.

    Raises:
        EnumerationLimitError: n exceeds FEEDER_ENUMERATION_CAP
    """
    n = network.n_switches
    if n > settings.ENUMERATION_CAP:
        raise EnumerationLimitError(
            f"refusing to enumerate 2^{n} configurations; the limit is {settings.ENUMERATION_CAP} switches")
    evaluator = evaluator or FeederEvaluator(network)

    points = []
    for bits in itertools.product((0, 1), repeat=n):
        points.append((bits, call_evaluator(evaluator, bits)))
    frontier = pareto_front(points)
    logger.info("enumerated %d configurations of %s, frontier size %d",
                len(points), network.name or "network", len(frontier))
    return EnumerationResult(points=points, frontier=frontier)

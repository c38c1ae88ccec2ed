"""
Poll-set generation around an incumbent switch vector.

At unit radius the points are x_k + e_i and x_k - e_i for every axis, formed
by integer arithmetic; the ones that leave {0,1}^n are flagged invalid and
discarded before evaluation. Larger radii (mesh-adaptive extension only)
return every binary vector at that Hamming distance.
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import List, Sequence, Tuple

import numpy as np

from app.exceptions import ConfigurationError

logger = logging.getLogger(__name__)


class PollOrder(str, Enum):
    LEXICOGRAPHIC = "lex"
    SEEDED_RANDOM = "random"


@dataclass(frozen=True)
class PollPoint:
    """
    One polling candidate.

    direction holds signed one-based axis indices: (+i,) or (-i,) at unit
    radius, one entry per flipped coordinate otherwise.
    """
    direction: Tuple[int, ...]
    point: Tuple[int, ...]
    valid: bool

    @property
    def discarded(self) -> bool:
        return not self.valid


def _poll_rng(seed: int, iteration: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(iteration)]))


def _unit_poll(base: np.ndarray) -> List[PollPoint]:
    n = base.shape[0]
    steps = np.zeros((2 * n, n), dtype=np.int64)
    axes = np.arange(n)
    steps[2 * axes, axes] = 1
    steps[2 * axes + 1, axes] = -1
    points = base[np.newaxis, :] + steps
    valid = np.all((points >= 0) & (points <= 1), axis=1)

    poll = []
    for row in range(2 * n):
        axis = row // 2 + 1
        sign = 1 if row % 2 == 0 else -1
        poll.append(PollPoint(
            direction=(sign * axis,),
            point=tuple(int(v) for v in points[row]),
            valid=bool(valid[row]),
        ))
    return poll


def _hamming_poll(base: np.ndarray, radius: int) -> List[PollPoint]:
    poll = []
    for flipped in itertools.combinations(range(base.shape[0]), radius):
        point = base.copy()
        idx = list(flipped)
        point[idx] = 1 - point[idx]
        direction = tuple((i + 1) if base[i] == 0 else -(i + 1) for i in flipped)
        poll.append(PollPoint(direction=direction, point=tuple(int(v) for v in point), valid=True))
    return poll


def generate_poll_set(x_k: Sequence[int], order: PollOrder = PollOrder.LEXICOGRAPHIC,
                      seed: int = 0, radius: int = 1, iteration: int = 0) -> List[PollPoint]:
    """
    Build the poll set around x_k.

    Args:
        x_k: Incumbent switch vector
        order: Lexicographic (+e_1, -e_1, +e_2, ...) or a seeded permutation
        seed: Run seed; together with iteration it fixes the permutation
        radius: Hamming radius, 1 unless the mesh-adaptive extension is on
        iteration: Zero-based step counter of the calling run

    Returns:
        2n points at unit radius (exactly n of them valid), C(n, radius) otherwise

    Raises:
        ConfigurationError: radius < 1 or radius > n
    """
    base = np.asarray(x_k, dtype=np.int64)
    n = base.shape[0]
    if radius < 1 or radius > n:
        raise ConfigurationError(f"poll radius {radius} has no neighbours in dimension {n}")

    if radius == 1:
        poll = _unit_poll(base)
    else:
        # Larger meshes are taken around the binary projection of x_k
        poll = _hamming_poll(np.clip(base, 0, 1), radius)

    if order is PollOrder.SEEDED_RANDOM:
        permutation = _poll_rng(seed, iteration).permutation(len(poll))
        poll = [poll[i] for i in permutation]
    logger.debug("poll set of %d points at radius %d around %s", len(poll), radius, tuple(base))
    return poll


def poll_size(n: int, radius: int) -> int:
    """Number of points generate_poll_set returns"""
    return 2 * n if radius == 1 else comb(n, radius)

"""
Pytest configuration and shared fixtures for the optimizer, simulator and harness tests
"""

import pytest
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

from app.config import BUNDLED_NETWORK_DIR
from app.network_loader import load_network
from app.optimizer.frontier_filter import Metrics
from app.simulation.network import Branch, Bus, NetworkModel

# Metric stream of the eight-candidate frontier narrative
NARRATIVE_METRICS = [
    (120.0, 0.8),
    (100.0, 1.2),
    (95.0, 0.6),
    (90.0, 0.9),
    (98.0, 0.4),
    (105.0, 0.7),
    (85.0, 0.4),
    (86.0, 0.2),
]


class ScriptedEvaluator:
    """Returns a fixed metric sequence, one pair per call, whatever the candidate"""

    def __init__(self, metrics: Sequence[Tuple[float, float]], dimension: int = 3):
        self.metrics = [Metrics(f, h) for f, h in metrics]
        self.dimension = dimension
        self.calls: List[Tuple[int, ...]] = []

    def __call__(self, x):
        if len(self.calls) >= len(self.metrics):
            raise RuntimeError("scripted evaluator ran out of metrics")
        self.calls.append(tuple(x))
        return self.metrics[len(self.calls) - 1]


class TableEvaluator:
    """Looks the candidate up in a SwitchVector -> (f, h) table"""

    def __init__(self, table: Dict[Tuple[int, ...], Tuple[float, float]]):
        self.table = {k: Metrics(*v) for k, v in table.items()}
        self.calls: List[Tuple[int, ...]] = []

    def __call__(self, x):
        self.calls.append(tuple(x))
        return self.table[tuple(x)]


@pytest.fixture
def network_dir() -> Path:
    return BUNDLED_NETWORK_DIR


@pytest.fixture(scope="session")
def twobus() -> NetworkModel:
    return load_network(BUNDLED_NETWORK_DIR / "twobus.json")


@pytest.fixture(scope="session")
def ladder4() -> NetworkModel:
    return load_network(BUNDLED_NETWORK_DIR / "ladder4.json")


@pytest.fixture(scope="session")
def feeder12() -> NetworkModel:
    return load_network(BUNDLED_NETWORK_DIR / "feeder12.json")


@pytest.fixture(scope="session")
def feeder12_enumeration(feeder12):
    """All 4096 configurations of the bundled 12-switch feeder"""
    from app.harness.enumeration import enumerate_all
    return enumerate_all(feeder12)


@pytest.fixture
def feeder12_default_bits() -> Tuple[int, ...]:
    """Sectionalizers closed, the three ties open"""
    return (1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0)


@pytest.fixture(scope="session")
def ieee123() -> NetworkModel:
    return load_network(BUNDLED_NETWORK_DIR / "ieee123.json")


@pytest.fixture
def ieee123_default_bits() -> Tuple[int, ...]:
    """13 sectionalizers closed, 10 ties open"""
    return (1,) * 13 + (0,) * 10


@pytest.fixture
def narrative_evaluator():
    return ScriptedEvaluator(NARRATIVE_METRICS)


@pytest.fixture
def triangle_network() -> NetworkModel:
    """Source bus 1 and two load buses joined in a triangle; every branch switchable"""
    return NetworkModel(
        buses=(Bus(1), Bus(2, 100.0, 50.0), Bus(3, 80.0, 20.0)),
        branches=(
            Branch(1, 1, 2, 0.01, 0.02, 1.0, switchable=True),
            Branch(2, 2, 3, 0.01, 0.02, 1.0, switchable=True),
            Branch(3, 1, 3, 0.02, 0.02, 1.0, switchable=True),
        ),
        source_bus=1,
        s_base_kva=1000.0,
        v_base_kv=12.47,
        name="triangle",
    )


@pytest.fixture
def network_payload() -> dict:
    """Minimal valid network file content"""
    return {
        "schema_version": 1,
        "base": {"s_base_kva": 1000.0, "v_base_kv": 12.47},
        "v_limits": {"min": 0.95, "max": 1.05},
        "source_bus": 1,
        "buses": [
            {"id": 1, "p_kw": 0.0, "q_kvar": 0.0},
            {"id": 2, "p_kw": 100.0, "q_kvar": 30.0},
            {"id": 3, "p_kw": 50.0, "q_kvar": 10.0},
        ],
        "branches": [
            {"id": 1, "from": 1, "to": 2, "r_pu": 0.01, "x_pu": 0.02, "rating_pu": 1.0},
            {"id": 2, "from": 2, "to": 3, "r_pu": 0.01, "x_pu": 0.02, "rating_pu": 1.0, "switchable": True},
        ],
    }


# Switch indices of the three independent loops of feeder12 (ties last in each group)
FEEDER12_LOOPS = ((0, 3, 9), (4, 6, 10), (1, 2, 7, 8, 11))


@pytest.fixture(scope="session")
def feeder12_radial_configs() -> List[Tuple[int, ...]]:
    """The 45 spanning trees of feeder12: one open switch per loop"""
    configs = []
    for a in FEEDER12_LOOPS[0]:
        for b in FEEDER12_LOOPS[1]:
            for c in FEEDER12_LOOPS[2]:
                bits = [1] * 12
                for index in (a, b, c):
                    bits[index] = 0
                configs.append(tuple(bits))
    return configs

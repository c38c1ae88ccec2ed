"""
Immutable radial-feeder network model.

Impedances and ratings are per-unit on (s_base_kva, v_base_kv); loads are
kept in kW / kvar as they appear in the network file. The order of the
switchable branches defines the index order of every switch vector.
"""

from dataclasses import dataclass, replace
from typing import Dict, FrozenSet, Tuple

from app.exceptions import NetworkValidationError


@dataclass(frozen=True)
class Bus:
    id: int
    p_kw: float = 0.0
    q_kvar: float = 0.0


@dataclass(frozen=True)
class Branch:
    id: int
    from_bus: int
    to_bus: int
    r_pu: float
    x_pu: float
    rating_pu: float
    switchable: bool = False


@dataclass(frozen=True)
class NetworkModel:
    buses: Tuple[Bus, ...]
    branches: Tuple[Branch, ...]
    source_bus: int
    s_base_kva: float
    v_base_kv: float
    v_min: float = 0.95
    v_max: float = 1.05
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "buses", tuple(self.buses))
        object.__setattr__(self, "branches", tuple(self.branches))
        self._validate()

    def _validate(self):
        bus_ids = set()
        for bus in self.buses:
            if bus.id in bus_ids:
                raise NetworkValidationError(f"duplicate bus id {bus.id}", offending_id=bus.id)
            bus_ids.add(bus.id)
        if not bus_ids:
            raise NetworkValidationError("network declares no buses")
        if self.source_bus not in bus_ids:
            raise NetworkValidationError(f"source bus {self.source_bus} is not a declared bus",
                                         offending_id=self.source_bus)

        branch_ids = set()
        for branch in self.branches:
            if branch.id in branch_ids:
                raise NetworkValidationError(f"duplicate branch id {branch.id}", offending_id=branch.id)
            branch_ids.add(branch.id)
            for end in (branch.from_bus, branch.to_bus):
                if end not in bus_ids:
                    raise NetworkValidationError(
                        f"branch {branch.id} ends at undeclared bus {end}", offending_id=branch.id)
            if branch.from_bus == branch.to_bus:
                raise NetworkValidationError(f"branch {branch.id} connects bus {branch.from_bus} to itself",
                                             offending_id=branch.id)
            if branch.r_pu < 0 or branch.x_pu < 0:
                raise NetworkValidationError(f"branch {branch.id} has a negative impedance component",
                                             offending_id=branch.id)
            if branch.rating_pu <= 0:
                raise NetworkValidationError(f"branch {branch.id} must have a positive rating",
                                             offending_id=branch.id)

        if not self.v_min < self.v_max:
            raise NetworkValidationError(f"voltage limits must satisfy v_min < v_max, got {self.v_min}, {self.v_max}")
        if self.s_base_kva <= 0 or self.v_base_kv <= 0:
            raise NetworkValidationError("base power and base voltage must be positive")

    @property
    def bus_ids(self) -> Tuple[int, ...]:
        return tuple(bus.id for bus in self.buses)

    @property
    def switchable(self) -> Tuple[int, ...]:
        """Switchable branch ids in file order (switch vector index order)"""
        return tuple(branch.id for branch in self.branches if branch.switchable)

    @property
    def fixed_closed(self) -> FrozenSet[int]:
        return frozenset(branch.id for branch in self.branches if not branch.switchable)

    @property
    def n_switches(self) -> int:
        return len(self.switchable)

    def branch_map(self) -> Dict[int, Branch]:
        return {branch.id: branch for branch in self.branches}

    def closed_branches(self, x) -> Tuple[Branch, ...]:
        """Fixed branches plus the switchable ones whose bit is 1, in file order"""
        states = dict(zip(self.switchable, x))
        return tuple(b for b in self.branches if not b.switchable or states[b.id] == 1)

    def load_pu(self) -> Dict[int, complex]:
        """Per-bus complex load in per-unit of s_base"""
        return {bus.id: complex(bus.p_kw, bus.q_kvar) / self.s_base_kva for bus in self.buses}

    def summary(self) -> str:
        return (f"{self.name or 'network'}: {len(self.buses)} buses, {len(self.branches)} branches, "
                f"{self.n_switches} switchable")


def scale_loads(network: NetworkModel, alpha: float) -> NetworkModel:
    """Copy of the network with every load multiplied by alpha"""
    if alpha < 0:
        raise ValueError(f"load scale must be nonnegative, got {alpha}")
    buses = tuple(replace(bus, p_kw=bus.p_kw * alpha, q_kvar=bus.q_kvar * alpha) for bus in network.buses)
    return replace(network, buses=buses)

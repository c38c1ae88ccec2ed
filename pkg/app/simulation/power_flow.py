"""
Backward/forward sweep power flow for radial feeders.

Buses other than the source are indexed in breadth-first order from the
source and each owns the branch feeding it. With T[j, k] = 1 when bus k lies
in the subtree below branch j, one sweep is

    I_load = conj(S / V)
    I_branch = T @ I_load                      (backward: leaves -> root)
    V = V_source - T.T @ (z * I_branch)        (forward: root -> leaves)

repeated until the largest per-bus voltage change drops below the tolerance.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Sequence

import networkx as nx
import numpy as np

from app.config import settings
from app.exceptions import SimulationError
from app.simulation.network import NetworkModel
from app.simulation.topology import check_topology, closed_graph

logger = logging.getLogger(__name__)

SOURCE_VOLTAGE = complex(1.0, 0.0)


@dataclass(frozen=True)
class PowerFlowSolution:
    bus_voltage: Dict[int, complex]
    branch_current: Dict[int, complex]
    total_loss: float
    converged: bool
    iterations: int
    total_loss_kvar: float = 0.0
    source_injection_kva: complex = 0j

    def min_voltage(self) -> float:
        return min(abs(v) for v in self.bus_voltage.values())

    def max_voltage(self) -> float:
        return max(abs(v) for v in self.bus_voltage.values())


@dataclass(frozen=True)
class _SweepTree:
    order: list            # non-source bus ids, breadth-first
    branch_ids: list       # branch feeding each bus in order
    subtree: np.ndarray    # T matrix
    z: np.ndarray          # branch impedance per bus in order
    load: np.ndarray       # per-unit complex load per bus in order
    feeds_from_source: np.ndarray  # buses whose branch starts at the source


def _build_tree(network: NetworkModel, x: Sequence[int]) -> _SweepTree:
    graph = closed_graph(network, x)
    loads = network.load_pu()
    order, branch_ids, parent = [], [], []
    position = {network.source_bus: -1}
    for parent_bus, child_bus in nx.bfs_edges(graph, network.source_bus):
        branch = next(iter(graph.get_edge_data(parent_bus, child_bus).values()))["branch"]
        position[child_bus] = len(order)
        order.append(child_bus)
        branch_ids.append(branch.id)
        parent.append(position[parent_bus])

    m = len(order)
    subtree = np.zeros((m, m))
    for k in range(m):
        j = k
        while j != -1:
            subtree[j, k] = 1.0
            j = parent[j]

    branches = network.branch_map()
    z = np.array([complex(branches[b].r_pu, branches[b].x_pu) for b in branch_ids], dtype=np.complex128)
    load = np.array([loads[bus] for bus in order], dtype=np.complex128)
    return _SweepTree(order=order, branch_ids=branch_ids, subtree=subtree, z=z, load=load,
                      feeds_from_source=np.array(parent, dtype=np.int64) == -1)


def solve_power_flow(network: NetworkModel, x: Sequence[int], tolerance: Optional[float] = None,
                     max_iterations: Optional[int] = None) -> PowerFlowSolution:
    """
    Solve the radial configuration x with constant-PQ loads and the source at 1.0 p.u.

    Args:
        network: Feeder model
        x: Switch vector; must describe a radial, connected configuration
        tolerance: Convergence threshold on max |dV| in p.u. (default FEEDER_PF_TOLERANCE)
        max_iterations: Sweep cap (default FEEDER_PF_MAX_ITERATIONS)

    Returns:
        PowerFlowSolution; converged is False when the cap is hit or the sweep diverges

    Raises:
        SimulationError: x is not radial and connected
    """
    tolerance = settings.PF_TOLERANCE if tolerance is None else tolerance
    max_iterations = settings.PF_MAX_ITERATIONS if max_iterations is None else max_iterations

    report = check_topology(network, x)
    if not report.radial:
        raise SimulationError(
            f"power flow needs a radial connected configuration "
            f"({report.n_islands} islanded buses, {report.n_loops} loops)")

    tree = _build_tree(network, x)
    voltage = np.full(len(tree.order), SOURCE_VOLTAGE, dtype=np.complex128)
    branch_current = np.zeros(len(tree.order), dtype=np.complex128)
    converged = False
    iterations = 0

    with np.errstate(all="ignore"):
        for iterations in range(1, max_iterations + 1):
            load_current = np.conj(tree.load / voltage)
            branch_current = tree.subtree @ load_current
            updated = SOURCE_VOLTAGE - tree.subtree.T @ (tree.z * branch_current)
            delta = float(np.max(np.abs(updated - voltage))) if len(voltage) else 0.0
            voltage = updated
            if not np.all(np.isfinite(voltage)):
                logger.warning("sweep diverged after %d iterations", iterations)
                break
            if delta < tolerance:
                converged = True
                break

        loss = tree.z * np.abs(branch_current) ** 2
        root_current = np.sum(branch_current[tree.feeds_from_source])

    source_load = network.load_pu()[network.source_bus]
    injection_pu = SOURCE_VOLTAGE * np.conj(root_current) + source_load

    loss_kw = float(np.sum(loss.real)) * network.s_base_kva
    loss_kvar = float(np.sum(loss.imag)) * network.s_base_kva
    if not (np.isfinite(loss_kw) and np.isfinite(loss_kvar)):
        loss_kw = loss_kvar = float("inf")

    bus_voltage = {network.source_bus: SOURCE_VOLTAGE}
    bus_voltage.update({bus: complex(v) for bus, v in zip(tree.order, voltage)})
    if not converged:
        logger.info("power flow did not converge within %d iterations", max_iterations)

    return PowerFlowSolution(
        bus_voltage=bus_voltage,
        branch_current={b: complex(i) for b, i in zip(tree.branch_ids, branch_current)},
        total_loss=loss_kw,
        converged=converged,
        iterations=iterations,
        total_loss_kvar=loss_kvar,
        source_injection_kva=complex(injection_pu) * network.s_base_kva,
    )

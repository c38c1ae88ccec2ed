"""
Topology module: radiality and connectivity of the closed-branch graph.
"""

import logging
from dataclasses import dataclass
from typing import Sequence

import networkx as nx

from app.exceptions import ConfigurationError
from app.simulation.network import NetworkModel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TopologyReport:
    """
    connected: every bus reachable from the source through closed branches
    radial: the closed branches form a spanning tree
    n_islands: buses not reachable from the source
    n_loops: independent cycles (closed branches - buses + components)
    violation: n_islands + n_loops, zero exactly for radial configurations
    """
    connected: bool
    radial: bool
    n_islands: int
    n_loops: int
    violation: float


def closed_graph(network: NetworkModel, x: Sequence[int]) -> nx.MultiGraph:
    """Undirected multigraph of all buses and the branches closed under x"""
    if len(x) != network.n_switches:
        raise ConfigurationError(
            f"switch vector has length {len(x)}, network has {network.n_switches} switchable branches")
    graph = nx.MultiGraph()
    graph.add_nodes_from(network.bus_ids)
    for branch in network.closed_branches(x):
        graph.add_edge(branch.from_bus, branch.to_bus, key=branch.id, branch=branch)
    return graph


def check_topology(network: NetworkModel, x: Sequence[int]) -> TopologyReport:
    graph = closed_graph(network, x)
    n_components = nx.number_connected_components(graph)
    energized = nx.node_connected_component(graph, network.source_bus)
    n_islands = graph.number_of_nodes() - len(energized)
    n_loops = graph.number_of_edges() - graph.number_of_nodes() + n_components
    connected = n_islands == 0
    return TopologyReport(
        connected=connected,
        radial=connected and n_loops == 0,
        n_islands=n_islands,
        n_loops=n_loops,
        violation=float(n_islands + n_loops),
    )

"""
The black-box evaluation pipeline: topology module, power-flow module and
the limit-violation modules, folded into the (f, h) metric pair.

f is the active-power loss in kW (INFEASIBLE when no radial power flow
solution exists); h is the largest violation reported by any module.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from app.config import settings
from app.exceptions import ConfigurationError, SimulationError
from app.optimizer.frontier_filter import INFEASIBLE, Metrics, SwitchVector
from app.simulation.network import NetworkModel
from app.simulation.power_flow import PowerFlowSolution, solve_power_flow
from app.simulation.topology import TopologyReport, check_topology

logger = logging.getLogger(__name__)

# Modules outside the bundled environment's scope report no violation
STUB_MODULES = ("protection", "voltage_regulation")


def voltage_violation(solution: PowerFlowSolution, network: NetworkModel) -> float:
    """Largest per-unit excursion outside [v_min, v_max]"""
    worst = 0.0
    for voltage in solution.bus_voltage.values():
        magnitude = abs(voltage)
        worst = max(worst, network.v_min - magnitude, magnitude - network.v_max)
    return worst


def thermal_violation(solution: PowerFlowSolution, network: NetworkModel) -> float:
    """Largest fractional overload over the closed branches"""
    branches = network.branch_map()
    worst = 0.0
    for branch_id, current in solution.branch_current.items():
        rating = branches[branch_id].rating_pu
        worst = max(worst, (abs(current) - rating) / rating)
    return worst


def violations(solution: PowerFlowSolution, network: NetworkModel) -> List[Tuple[str, float]]:
    """
    Per-module violations of a converged solution, each nonnegative.

    Raises:
        SimulationError: the solution did not converge
    """
    if not solution.converged:
        raise SimulationError("violations are undefined for an unconverged power flow")
    modules = [
        ("voltage", voltage_violation(solution, network)),
        ("thermal", thermal_violation(solution, network)),
    ]
    modules.extend((name, 0.0) for name in STUB_MODULES)
    return modules


@dataclass(frozen=True)
class EvaluationReport:
    metrics: Metrics
    topology: TopologyReport
    power_flow: Optional[PowerFlowSolution]
    module_violations: Tuple[Tuple[str, float], ...]


def evaluate_detailed(network: NetworkModel, x: Sequence[int], tolerance: Optional[float] = None,
                      max_iterations: Optional[int] = None) -> EvaluationReport:
    """evaluate, keeping every module's output"""
    if len(x) != network.n_switches:
        raise ConfigurationError(
            f"switch vector has length {len(x)}, network has {network.n_switches} switchable branches")

    topology = check_topology(network, x)
    if topology.violation > 0:
        return EvaluationReport(
            metrics=Metrics(INFEASIBLE, topology.violation),
            topology=topology,
            power_flow=None,
            module_violations=(("topology", topology.violation),),
        )

    solution = solve_power_flow(network, x, tolerance, max_iterations)
    if not solution.converged:
        return EvaluationReport(
            metrics=Metrics(INFEASIBLE, 1.0 + topology.violation),
            topology=topology,
            power_flow=solution,
            module_violations=(("topology", topology.violation), ("power_flow", 1.0)),
        )

    modules = [("topology", topology.violation)] + violations(solution, network)
    h = max(value for _, value in modules)
    return EvaluationReport(
        metrics=Metrics(solution.total_loss, h),
        topology=topology,
        power_flow=solution,
        module_violations=tuple(modules),
    )


def evaluate(network: NetworkModel, x: Sequence[int], tolerance: Optional[float] = None,
             max_iterations: Optional[int] = None) -> Metrics:
    """
    Black-box metrics of configuration x.

    Non-radial or disconnected configurations skip the power flow and score
    (INFEASIBLE, islands + loops); an unconverged power flow scores
    (INFEASIBLE, 1 + topology violation).
    """
    return evaluate_detailed(network, x, tolerance, max_iterations).metrics


class FeederEvaluator:
    """
    Callable SwitchVector -> Metrics bound to one network and solver setting.

    Instances hold no state besides a call counter, so repeated calls with
    the same vector return the same metrics.
    """

    def __init__(self, network: NetworkModel, tolerance: Optional[float] = None,
                 max_iterations: Optional[int] = None):
        self.network = network
        self.tolerance = settings.PF_TOLERANCE if tolerance is None else tolerance
        self.max_iterations = settings.PF_MAX_ITERATIONS if max_iterations is None else max_iterations
        self.calls = 0

    @property
    def dimension(self) -> int:
        return self.network.n_switches

    def __call__(self, x: SwitchVector) -> Metrics:
        self.calls += 1
        return evaluate(self.network, x, self.tolerance, self.max_iterations)

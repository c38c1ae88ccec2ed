from app.simulation.evaluator import EvaluationReport, FeederEvaluator, evaluate, evaluate_detailed, violations
from app.simulation.network import Branch, Bus, NetworkModel, scale_loads
from app.simulation.power_flow import PowerFlowSolution, solve_power_flow
from app.simulation.topology import TopologyReport, check_topology, closed_graph

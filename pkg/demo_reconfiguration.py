#!/usr/bin/env python3
"""
Walkthrough of the feeder reconfiguration optimizer on the bundled 12-switch feeder
"""

from app.config import configure_logging, settings
from app.harness.artifacts import write_frontier, write_report, write_trace
from app.harness.comparison import compare_runs
from app.harness.enumeration import enumerate_all
from app.network_loader import load_network
from app.optimizer.frontier_filter import FrontierFilter, Metrics
from app.optimizer.mads import run_mads
from app.optimizer.results import RunConfig, bits_to_string
from app.simulation.evaluator import FeederEvaluator, evaluate_detailed

NETWORK = "feeder12"
BUDGET = 1000
SEEDS = list(range(5))

# (f, h) of eight candidates offered to an empty filter in order
FILTER_STREAM = [(120.0, 0.8), (100.0, 1.2), (95.0, 0.6), (90.0, 0.9),
                 (98.0, 0.4), (105.0, 0.7), (85.0, 0.4), (86.0, 0.2)]


def print_header(title):
    """Print a formatted header"""
    print("\n" + "="*60)
    print(f" {title}")
    print("="*60)


def print_step(step_num, description):
    """Print a step description"""
    print(f"\n🔸 Step {step_num}: {description}")
    print("-" * 40)


def demo_filter_stream():
    """Offer the candidate stream to an empty filter and show each decision"""
    frontier = FrontierFilter()
    for index, (f, h) in enumerate(FILTER_STREAM, start=1):
        decision = frontier.add((index,), Metrics(f, h))
        detail = ""
        if decision.removed_ids:
            detail = f" removing {list(decision.removed_ids)}"
        elif decision.dominator_id is not None:
            detail = f" by #{decision.dominator_id}"
        print(f"   ({f:>5}, {h:.1f}) -> {decision.label}{detail}; filter ids {frontier.ids}")


def demo_single_evaluation(network):
    """Evaluate the as-built configuration: sectionalizers closed, ties open"""
    bits = tuple(1 if i < 9 else 0 for i in range(network.n_switches))
    report = evaluate_detailed(network, bits)
    print(f"📍 Configuration {bits_to_string(bits)}")
    print(f"   loss f = {report.metrics.f:.3f} kW, violation h = {report.metrics.h:.4f}")
    for name, value in report.module_violations:
        print(f"   {name:<20} {value:.4f}")


def demo_mads_run(network):
    """One MADS run with its trace and frontier written to the output directory"""
    config = RunConfig(dimension=network.n_switches, budget=BUDGET, seed=0)
    result = run_mads(config, FeederEvaluator(network))
    print(f"✅ {result.summary()}")
    for entry in result.frontier.sorted_by_loss():
        print(f"   #{entry.id:<4} {bits_to_string(entry.x)}  f={entry.metrics.f:.3f}  h={entry.metrics.h:.4f}")

    trace_path = write_trace(result.trace, settings.OUTPUT_DIR / f"{NETWORK}_mads_trace.csv")
    frontier_path = write_frontier(result.frontier, settings.OUTPUT_DIR / f"{NETWORK}_mads_frontier.json")
    print(f"💾 {trace_path}")
    print(f"💾 {frontier_path}")
    return result


def demo_enumeration(network, mads_result):
    """The exact frontier, and how the MADS frontier sits against it"""
    exact = enumerate_all(network)
    feasible = exact.feasible()
    print(f"✅ {exact.evaluations} configurations, {len(feasible)} feasible, exact frontier of {len(exact.frontier)}")
    if feasible:
        best = min(m.f for _, m in feasible)
        found = mads_result.best_feasible_f()
        print(f"   global best feasible loss: {best:.3f} kW")
        print(f"   MADS best feasible loss:   {'none' if found is None else f'{found:.3f} kW'}")
    path = write_frontier(exact.frontier, settings.OUTPUT_DIR / f"{NETWORK}_exact_frontier.json")
    print(f"💾 {path}")


def demo_comparison(network):
    """MADS against uniform random search at the same budget"""
    for mesh_adaptive in (False, True):
        report = compare_runs(network, BUDGET, SEEDS, mesh_adaptive=mesh_adaptive)
        mads, baseline = report.median["mads"], report.median["random"]
        label = "mesh-adaptive" if mesh_adaptive else "unit radius"
        print(f"📊 {label}: median best loss MADS={mads.best_feasible_f_kw} random={baseline.best_feasible_f_kw}")
        print(f"   median evaluations to first feasible MADS={mads.evaluations_to_first_feasible} "
              f"random={baseline.evaluations_to_first_feasible}")
        suffix = "mesh" if mesh_adaptive else "unit"
        print(f"💾 {write_report(report, settings.OUTPUT_DIR / f'{NETWORK}_comparison_{suffix}.json')}")


def main():
    """Run the walkthrough"""
    configure_logging()
    print_header("🚀 FEEDER RECONFIGURATION DEMO")
    network = load_network(NETWORK)
    print(f"📄 {network.summary()}")

    print_step(1, "Frontier filter on a fixed candidate stream")
    demo_filter_stream()

    print_step(2, "Evaluate the as-built configuration")
    demo_single_evaluation(network)

    print_step(3, f"MADS with a budget of {BUDGET} evaluations")
    mads_result = demo_mads_run(network)

    print_step(4, "Exhaustive enumeration")
    demo_enumeration(network, mads_result)

    print_step(5, f"Baseline comparison over seeds {SEEDS}")
    demo_comparison(network)

    print_header("🎉 DEMO COMPLETE")


if __name__ == "__main__":
    main()

"""
Tests for the MADS loop: incumbent selection, opportunistic polling, stopping and determinism
"""

import pytest

from app.exceptions import ConfigurationError, EvaluatorError, FrontierExhaustedError
from app.optimizer.frontier_filter import (
    DecisionKind,
    FilterDecision,
    FilterEntry,
    FrontierFilter,
    Metrics,
    is_pareto_consistent,
)
from app.optimizer.mads import OptimizerState, initialize, mads_step, run_mads, select_incumbent, should_stop
from app.optimizer.polling import PollOrder
from app.optimizer.results import IncumbentPolicy, RunConfig, StopReason
from app.simulation.evaluator import FeederEvaluator
from tests.conftest import ScriptedEvaluator, TableEvaluator

# f-only landscape with a unique strict minimum at (1, 1)
TWO_SWITCH_TABLE = {
    (0, 0): (10.0, 0.0),
    (1, 0): (7.0, 0.0),
    (0, 1): (8.0, 0.0),
    (1, 1): (5.0, 0.0),
}


def seeded_state(config, x, metrics):
    frontier = FrontierFilter()
    frontier.add(x, Metrics(*metrics))
    return OptimizerState(config=config, filter=frontier, incumbent_id=1, eval_count=1)


class TestSelectIncumbent:
    """Test suite for incumbent policies"""

    @pytest.fixture
    def frontier(self):
        return FrontierFilter(entries=[
            FilterEntry(3, (0, 0), Metrics(95, 0.6)),
            FilterEntry(5, (0, 1), Metrics(98, 0.4)),
            FilterEntry(7, (1, 1), Metrics(90, 0.9)),
        ], next_id=8)

    @pytest.mark.unit
    def test_round_robin_lowest_id(self, frontier):
        assert select_incumbent(frontier, IncumbentPolicy.ROUND_ROBIN, set()) == 3
        assert select_incumbent(frontier, IncumbentPolicy.ROUND_ROBIN, {3}) == 5

    @pytest.mark.unit
    def test_feasibility_first_smaller_h(self, frontier):
        assert select_incumbent(frontier, IncumbentPolicy.FEASIBILITY_FIRST, set()) == 5

    @pytest.mark.unit
    def test_feasibility_first_tie_broken_by_f(self):
        frontier = FrontierFilter(entries=[
            FilterEntry(3, (0,), Metrics(95, 0.4)),
            FilterEntry(5, (1,), Metrics(98, 0.4)),
        ], next_id=6)
        assert select_incumbent(frontier, IncumbentPolicy.FEASIBILITY_FIRST, set()) == 3

    @pytest.mark.unit
    def test_all_exhausted(self, frontier):
        with pytest.raises(FrontierExhaustedError):
            select_incumbent(frontier, IncumbentPolicy.ROUND_ROBIN, {3, 5, 7})


class TestMadsStep:
    """Test suite for a single poll step"""

    @pytest.mark.unit
    def test_opportunistic_break_on_first_success(self):
        config = RunConfig(dimension=2, budget=10)
        state = seeded_state(config, (0, 0), (10.0, 0.0))
        evaluator = TableEvaluator(TWO_SWITCH_TABLE)

        state, outcome = mads_step(state, evaluator)

        assert outcome.evaluations == 1
        assert outcome.skipped == 0
        assert outcome.accepted.kind is DecisionKind.ADDED_REPLACING
        assert evaluator.calls == [(1, 0)]
        assert state.eval_count == 2

    @pytest.mark.unit
    def test_locally_optimal_incumbent_is_exhausted(self):
        config = RunConfig(dimension=2, budget=10)
        state = seeded_state(config, (1, 1), (5.0, 0.0))

        state, outcome = mads_step(state, TableEvaluator(TWO_SWITCH_TABLE))

        assert outcome.evaluations == 2
        assert outcome.skipped == 2
        assert outcome.accepted is None
        assert outcome.incumbent_exhausted
        assert state.polled_exhaustively == {1}
        assert should_stop(state)

    @pytest.mark.unit
    def test_skipped_points_are_journaled_not_traced(self):
        config = RunConfig(dimension=2, budget=10)
        state = seeded_state(config, (1, 1), (5.0, 0.0))
        state, _ = mads_step(state, TableEvaluator(TWO_SWITCH_TABLE))

        skipped = [r for r in state.journal if r.skipped]
        assert [r.candidate for r in skipped] == [(2, 1), (1, 2)]
        assert all(r.metrics is None and r.decision_label == "skipped_invalid" for r in skipped)
        assert all(not r.skipped for r in state.trace)

    @pytest.mark.unit
    def test_filter_change_clears_exhaustion(self):
        config = RunConfig(dimension=2, budget=10)
        state = seeded_state(config, (0, 0), (10.0, 0.0))
        state.polled_exhaustively.add(99)
        state, _ = mads_step(state, TableEvaluator(TWO_SWITCH_TABLE))
        assert state.polled_exhaustively == set()

    @pytest.mark.unit
    def test_budget_runs_out_mid_poll(self):
        config = RunConfig(dimension=2, budget=2)
        state = seeded_state(config, (1, 1), (5.0, 0.0))
        state, outcome = mads_step(state, TableEvaluator(TWO_SWITCH_TABLE))
        assert outcome.evaluations == 1
        assert not outcome.incumbent_exhausted
        assert should_stop(state)

    @pytest.mark.unit
    def test_mesh_adaptive_radius_grows_and_decays(self):
        config = RunConfig(dimension=2, budget=50, mesh_adaptive=True)
        state = seeded_state(config, (0, 0), (10.0, 0.0))
        evaluator = TableEvaluator(TWO_SWITCH_TABLE)

        radii = []
        while not should_stop(state):
            state, outcome = mads_step(state, evaluator)
            radii.append(outcome.radius)

        assert radii[0] == 1
        assert 2 in radii
        assert radii[-1] == 1
        assert [e.x for e in state.filter] == [(1, 1)]


class TestRunMads:
    """Test suite for complete runs"""

    @pytest.mark.unit
    def test_narrative_decision_sequence(self, narrative_evaluator):
        config = RunConfig(dimension=3, budget=8, seed=0)
        result = run_mads(config, narrative_evaluator)

        assert [r.decision for r in result.trace] == [
            FilterDecision.added(),
            FilterDecision.added(),
            FilterDecision.replacing([1, 2]),
            FilterDecision.added(),
            FilterDecision.added(),
            FilterDecision.rejected(3),
            FilterDecision.replacing([3, 4, 5]),
            FilterDecision.added(),
        ]
        assert [r.incumbent_id for r in result.trace] == [None, 1, 1, 3, 3, 3, 3, 6]
        assert [r.filter_size_after for r in result.trace] == [1, 2, 1, 2, 3, 3, 1, 2]
        assert [(e.id, e.metrics.f, e.metrics.h) for e in result.frontier] == [(6, 85.0, 0.4), (7, 86.0, 0.2)]
        assert result.evaluations_used == 8
        assert result.stop_reason is StopReason.BUDGET

    @pytest.mark.unit
    def test_trace_indices_and_journal(self, narrative_evaluator):
        result = run_mads(RunConfig(dimension=3, budget=8), narrative_evaluator)
        assert [r.eval_index for r in result.trace] == list(range(1, 9))
        assert len(result.journal) == len(result.trace) + result.skipped_count
        assert [r for r in result.journal if not r.skipped] == result.trace

    @pytest.mark.unit
    @pytest.mark.parametrize("seed", [0, 1, 2, 3, 4])
    def test_reaches_unique_minimum(self, seed):
        result = run_mads(RunConfig(dimension=2, budget=50, seed=seed), TableEvaluator(TWO_SWITCH_TABLE))
        assert [e.x for e in result.frontier] == [(1, 1)]
        assert result.stop_reason is StopReason.EXHAUSTION

    @pytest.mark.unit
    def test_constant_evaluator_exhausts_after_n_polls(self):
        n = 4
        result = run_mads(RunConfig(dimension=n, budget=100, seed=5), lambda x: Metrics(3.0, 0.0))
        assert len(result.frontier) == 1
        assert result.frontier.entries[0].x == result.trace[0].candidate
        assert result.evaluations_used == n + 1
        assert result.stop_reason is StopReason.EXHAUSTION
        assert all(r.decision.kind is DecisionKind.REJECTED_DUPLICATE for r in result.trace[1:])

    @pytest.mark.unit
    def test_budget_of_one(self):
        result = run_mads(RunConfig(dimension=3, budget=1), lambda x: Metrics(1.0, 0.0))
        assert len(result.trace) == 1
        assert len(result.frontier) == 1
        assert result.stop_reason is StopReason.BUDGET

    @pytest.mark.unit
    def test_zero_budget_rejected(self):
        with pytest.raises(ConfigurationError):
            run_mads(RunConfig(dimension=3, budget=0), lambda x: Metrics(1.0, 0.0))

    @pytest.mark.unit
    def test_no_switches_rejected(self):
        with pytest.raises(ConfigurationError):
            RunConfig(dimension=0, budget=10)

    @pytest.mark.unit
    def test_evaluator_failure_carries_candidate(self):
        def broken(x):
            raise ValueError("solver exploded")

        with pytest.raises(EvaluatorError) as excinfo:
            run_mads(RunConfig(dimension=3, budget=5, seed=1), broken)
        assert len(excinfo.value.candidate) == 3
        assert isinstance(excinfo.value.__cause__, ValueError)

    @pytest.mark.unit
    def test_evaluator_must_return_metrics(self):
        with pytest.raises(EvaluatorError):
            run_mads(RunConfig(dimension=2, budget=5), lambda x: (1.0, 0.0))

    @pytest.mark.unit
    def test_initial_candidate_is_seeded(self):
        a = run_mads(RunConfig(dimension=8, budget=1, seed=123), lambda x: Metrics(1.0, 0.0))
        b = run_mads(RunConfig(dimension=8, budget=1, seed=123), lambda x: Metrics(1.0, 0.0))
        assert a.trace[0].candidate == b.trace[0].candidate
        assert a.trace[0].decision.kind is DecisionKind.ADDED_NON_DOMINATING


class TestFeederRuns:
    """Engine properties on the bundled 12-switch feeder"""

    @pytest.mark.integration
    @pytest.mark.parametrize("seed", [0, 7, 19])
    @pytest.mark.parametrize("order", list(PollOrder))
    @pytest.mark.parametrize("policy", list(IncumbentPolicy))
    def test_deterministic(self, feeder12, seed, order, policy):
        config = RunConfig(dimension=12, budget=150, seed=seed, poll_order=order, incumbent_policy=policy)
        first = run_mads(config, FeederEvaluator(feeder12))
        second = run_mads(config, FeederEvaluator(feeder12))
        assert first.trace == second.trace
        assert first.journal == second.journal
        assert first.frontier == second.frontier

    @pytest.mark.integration
    @pytest.mark.parametrize("mesh_adaptive", [False, True])
    def test_budget_accounting_and_filter_safety(self, feeder12, mesh_adaptive):
        evaluator = FeederEvaluator(feeder12)
        config = RunConfig(dimension=12, budget=200, seed=3, mesh_adaptive=mesh_adaptive)
        state = initialize(config, evaluator)
        while not should_stop(state):
            state, _ = mads_step(state, evaluator)
            assert is_pareto_consistent(state.filter)
            assert state.eval_count <= config.budget
            assert len(state.trace) == state.eval_count
            assert 1 <= state.mesh_radius <= 2
        assert evaluator.calls == state.eval_count
        indices = [r.eval_index for r in state.trace]
        assert indices == sorted(set(indices))

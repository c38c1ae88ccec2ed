"""
Tests for the trace CSV and frontier JSON writers
"""

import csv
import io
import json
import math

import pytest

from app.exceptions import ConfigurationError
from app.harness.artifacts import (
    TRACE_HEADER,
    format_frontier,
    format_trace,
    read_frontier,
    read_trace,
    write_frontier,
    write_trace,
)
from app.optimizer.frontier_filter import FilterDecision, FrontierFilter, Metrics, is_pareto_consistent
from app.optimizer.mads import run_mads
from app.optimizer.results import SKIPPED_INVALID, RunConfig, TraceRecord
from app.simulation.evaluator import FeederEvaluator
from tests.conftest import TableEvaluator
from tests.test_mads_engine import TWO_SWITCH_TABLE


def record(index, bits, metrics, decision, incumbent=None, size=1, skip=None):
    return TraceRecord(eval_index=index, candidate=bits, metrics=metrics, decision=decision,
                       incumbent_id=incumbent, filter_size_after=size, skip_reason=skip)


class TestTrace:
    """Test suite for the trace CSV"""

    @pytest.mark.unit
    def test_header_is_first_line(self):
        assert format_trace([]) == ",".join(TRACE_HEADER) + "\n"

    @pytest.mark.unit
    def test_plain_csv_reader(self):
        text = format_trace([record(1, (1, 0), Metrics(3.5, 0.0), FilterDecision.added())])
        rows = list(csv.DictReader(io.StringIO(text)))
        assert rows == [{"eval": "1", "candidate_bits": "10", "f_kw": "3.5", "h": "0.0",
                         "decision": "added", "incumbent_id": "", "filter_size": "1"}]

    @pytest.mark.unit
    def test_rows(self):
        text = format_trace([
            record(1, (1, 0, 1), Metrics(math.inf, 2.0), FilterDecision.added()),
            record(2, (1, 1, 1), Metrics(12.5, 0.0), FilterDecision.replacing([1]), incumbent=1),
        ])
        rows = text.splitlines()[1:]
        assert rows == [
            "1,101,inf,2.0,added,,1",
            "2,111,12.5,0.0,replaced,1,1",
        ]

    @pytest.mark.unit
    def test_skipped_rows_are_opt_in(self):
        records = [
            record(1, (1, 1), Metrics(5.0, 0.0), FilterDecision.added()),
            record(1, (2, 1), None, None, incumbent=1, skip=SKIPPED_INVALID),
            record(1, (1, -1), None, None, incumbent=1, skip=SKIPPED_INVALID),
        ]
        assert len(format_trace(records).splitlines()) == 2
        rows = format_trace(records, include_skipped=True).splitlines()[1:]
        assert rows[1] == "1,+1,,,skipped_invalid,1,1"
        assert rows[2] == "1,1-,,,skipped_invalid,1,1"

    @pytest.mark.unit
    def test_write_and_read(self, tmp_path):
        result = run_mads(RunConfig(dimension=2, budget=10), TableEvaluator(TWO_SWITCH_TABLE))
        path = write_trace(result.trace, tmp_path / "out" / "trace.csv")
        rows = read_trace(path)
        assert [int(r["eval"]) for r in rows] == [r.eval_index for r in result.trace]
        assert [r["decision"] for r in rows] == [r.decision_label for r in result.trace]

    @pytest.mark.unit
    def test_read_rejects_foreign_csv(self, tmp_path):
        path = tmp_path / "other.csv"
        path.write_text("a,b\n1,2\n", encoding="utf-8")
        with pytest.raises(ConfigurationError):
            read_trace(path)


class TestFrontier:
    """Test suite for the frontier JSON"""

    @pytest.mark.unit
    def test_sorted_with_inf_as_string(self):
        frontier = FrontierFilter()
        frontier.add((0, 1), Metrics(math.inf, 1.0))
        frontier.add((1, 1), Metrics(40.0, 2.0))
        frontier.add((1, 0), Metrics(30.0, 3.0))
        document = json.loads(format_frontier(frontier))
        assert document["schema_version"] == 1
        assert [e["bits"] for e in document["entries"]] == ["10", "11", "01"]
        assert document["entries"][2]["f_kw"] == "inf"

    @pytest.mark.unit
    def test_read_back(self, tmp_path):
        frontier = FrontierFilter()
        frontier.add((0, 1), Metrics(math.inf, 1.0))
        frontier.add((1, 1), Metrics(40.0, 2.0))
        points = read_frontier(write_frontier(frontier, tmp_path / "frontier.json"))
        assert points == [((1, 1), Metrics(40.0, 2.0)), ((0, 1), Metrics(math.inf, 1.0))]

    @pytest.mark.integration
    def test_feeder12_run_is_consistent_on_disk(self, tmp_path, feeder12):
        result = run_mads(RunConfig(dimension=12, budget=300, seed=2), FeederEvaluator(feeder12))
        points = read_frontier(write_frontier(result.frontier, tmp_path / "frontier.json"))
        assert len(points) == len(result.frontier)
        assert is_pareto_consistent([m for _, m in points])

    @pytest.mark.unit
    def test_identical_input_identical_bytes(self, tmp_path):
        frontier = FrontierFilter()
        frontier.add((1, 0, 1), Metrics(0.1 + 0.2, 0.0))
        a = write_frontier(frontier, tmp_path / "a.json").read_bytes()
        b = write_frontier(frontier.copy(), tmp_path / "b.json").read_bytes()
        assert a == b

    @pytest.mark.unit
    @pytest.mark.parametrize("content", [
        '{"schema_version": 2, "entries": []}',
        '{"schema_version": 1, "entries": [{"bits": "01x", "f_kw": 1.0, "h": 0.0}]}',
        '{"schema_version": 1, "entries": [{"bits": "01", "f_kw": 1.0, "h": -1.0}]}',
        'not json',
    ])
    def test_invalid_file(self, tmp_path, content):
        path = tmp_path / "frontier.json"
        path.write_text(content, encoding="utf-8")
        with pytest.raises(ConfigurationError):
            read_frontier(path)

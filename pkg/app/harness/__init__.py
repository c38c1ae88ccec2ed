from app.harness.artifacts import read_frontier, read_trace, write_frontier, write_report, write_trace
from app.harness.comparison import compare_runs
from app.harness.enumeration import EnumerationResult, enumerate_all

"""
Trace CSV and frontier JSON files.

Both formats are written deterministically so that identical runs produce
byte-identical files.
"""

import csv
import io
import json
import logging
import math
from pathlib import Path
from typing import Iterable, List, Sequence, Union

from pydantic import ValidationError

from app.exceptions import ConfigurationError
from app.harness.enumeration import EvaluatedPoint
from app.models import SCHEMA_VERSION, ComparisonReport, FrontierEntryRecord, FrontierFile
from app.optimizer.frontier_filter import FrontierFilter, Metrics
from app.optimizer.results import TraceRecord, bits_to_string, parse_bits

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

TRACE_HEADER = ("eval", "candidate_bits", "f_kw", "h", "decision", "incumbent_id", "filter_size")


def _number(value: float) -> str:
    return "inf" if math.isinf(value) else repr(float(value))


def format_trace(records: Iterable[TraceRecord], include_skipped: bool = False) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(TRACE_HEADER)
    for record in records:
        if record.skipped:
            if not include_skipped:
                continue
            f_kw = h = ""
        else:
            f_kw = _number(record.metrics.f)
            h = _number(record.metrics.h)
        writer.writerow([
            record.eval_index,
            bits_to_string(record.candidate),
            f_kw,
            h,
            record.decision_label,
            "" if record.incumbent_id is None else record.incumbent_id,
            record.filter_size_after,
        ])
    return buffer.getvalue()


def write_trace(records: Iterable[TraceRecord], path: PathLike, include_skipped: bool = False) -> Path:
    """Write a trace CSV; pass the run's journal with include_skipped to keep discarded poll points"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(format_trace(records, include_skipped))
    logger.info("trace written to %s", path)
    return path


def read_trace(path: PathLike) -> List[dict]:
    """Rows of a trace CSV as dictionaries keyed by the header"""
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.DictReader(handle)
        if tuple(reader.fieldnames or ()) != TRACE_HEADER:
            raise ConfigurationError(f"{path}: unexpected trace header {reader.fieldnames}")
        return list(reader)


def frontier_points(frontier: Union[FrontierFilter, Sequence[EvaluatedPoint]]) -> List[EvaluatedPoint]:
    if isinstance(frontier, FrontierFilter):
        return [(entry.x, entry.metrics) for entry in frontier]
    return list(frontier)


def format_frontier(frontier: Union[FrontierFilter, Sequence[EvaluatedPoint]]) -> str:
    """Canonical frontier JSON sorted by f, then h"""
    points = sorted(frontier_points(frontier), key=lambda p: (p[1].f, p[1].h))
    document = FrontierFile(
        schema_version=SCHEMA_VERSION,
        entries=[FrontierEntryRecord(bits=bits_to_string(x), f_kw=m.f, h=m.h) for x, m in points],
    )
    return json.dumps(document.model_dump(), indent=2, sort_keys=True) + "\n"


def write_frontier(frontier: Union[FrontierFilter, Sequence[EvaluatedPoint]], path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(format_frontier(frontier))
    logger.info("frontier written to %s", path)
    return path


def read_frontier(path: PathLike) -> List[EvaluatedPoint]:
    """
    Parse a frontier file back into (SwitchVector, Metrics) pairs.

    Raises:
        ConfigurationError: the file is not a valid frontier document
    """
    try:
        document = FrontierFile.model_validate_json(Path(path).read_text(encoding="utf-8"))
    except ValidationError as e:
        raise ConfigurationError(f"{path}: invalid frontier file: {e.errors()[0]['msg']}") from e
    return [(parse_bits(entry.bits), Metrics(entry.f_kw, entry.h)) for entry in document.entries]


def write_report(report: ComparisonReport, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(format_report(report))
    return path


def format_report(report: ComparisonReport) -> str:
    return json.dumps(report.model_dump(mode="json"), indent=2, sort_keys=True) + "\n"

"""JSON / CSV emission of flat result rows.

JSON documents follow `schemas.OutputDocument`. CSV output starts with a
`# run: {...}` comment line holding the run record, then a header row.
Floats are written with 12 significant digits, Fractions as `p/q`
(integers without a denominator).
"""
import csv
import io
import json
import logging
import math
from fractions import Fraction
from numbers import Integral, Real
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence

from subfree import __version__
from subfree.config import DISPLAY_DIGITS
from subfree.errors import ParameterOutOfRange
from subfree.schemas import GraphFile, OutputDocument, RunRecord

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv")


def format_number(x: Any) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, Integral):
        return str(int(x))
    if isinstance(x, Real):
        return f"{float(x):.{DISPLAY_DIGITS}g}"
    return str(x)


def json_value(x: Any) -> Any:
    """Rounded float, `p/q` string or integer; other values pass through."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else format_number(x)
    if isinstance(x, Integral):
        return int(x)
    if isinstance(x, Real):
        x = float(x)
        return x if not math.isfinite(x) else float(format_number(x))
    if isinstance(x, Mapping):
        return {k: json_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [json_value(v) for v in x]
    return x


def run_record(
    command: str,
    config: Mapping[str, Any],
    outputs: Optional[Mapping[str, Any]] = None,
    wall_time_s: Optional[float] = None,
) -> RunRecord:
    return RunRecord(
        command=command,
        config=json_value(dict(config)),
        tool_version=__version__,
        outputs=json_value(dict(outputs or {})),
        wall_time_s=wall_time_s,
    )


def _columns(rows: Sequence[Mapping[str, Any]]) -> List[str]:
    columns: Dict[str, None] = {}
    for row in rows:
        for key in row:
            columns.setdefault(key, None)
    return list(columns)


def render_csv(rows: Sequence[Mapping[str, Any]], run: RunRecord) -> str:
    buf = io.StringIO()
    buf.write(f"# run: {run.model_dump_json()}\n")
    columns = _columns(rows)
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: format_number(row.get(k)) for k in columns})
    return buf.getvalue()


def render_json(rows: Sequence[Mapping[str, Any]], run: RunRecord, graph: Optional[Mapping[str, Any]] = None) -> str:
    doc = OutputDocument(
        run=run,
        rows=[json_value(dict(r)) for r in rows],
        graph=GraphFile.model_validate(graph) if graph is not None else None,
    )
    return doc.model_dump_json(indent=2, exclude_none=False) + "\n"


def render(rows: Sequence[Mapping[str, Any]], run: RunRecord, fmt: str, graph: Optional[Mapping[str, Any]] = None) -> str:
    if fmt == "csv":
        return render_csv(rows, run)
    if fmt == "json":
        return render_json(rows, run, graph)
    raise ParameterOutOfRange(f"format must be one of {', '.join(FORMATS)}, got {fmt!r}")


def write_text(text: str, out: Optional[str], stream) -> None:
    """Write to `out` if given, else to `stream`."""
    if out is None:
        stream.write(text)
        return
    Path(out).write_text(text, encoding="utf-8")
    logger.info(f"wrote {out}")


def read_document(text: str) -> OutputDocument:
    return OutputDocument.model_validate(json.loads(text))

"""
Result Emission Module.

This module writes experiment records as CSV or JSON and renders suite plots
as SVG 1.1. Column order is fixed: suite, seed, the parameters
alphabetically, then the results alphabetically. Output is a pure function
of the records, so identical records give byte-identical files.
"""

import csv
import io
import json
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple
from xml.sax.saxutils import escape

from ttsac.core.errors import InvalidArgumentError, OutputError
from ttsac.schemas.experiment import ExperimentRecord, OutputFormat, PlotSpec, Scalar
from ttsac.utils.logger import logger

SVG_WIDTH = 800
SVG_HEIGHT = 600
_MARGIN_LEFT = 90
_MARGIN_RIGHT = 150
_MARGIN_TOP = 50
_MARGIN_BOTTOM = 70
_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")


def columns(records: Sequence[ExperimentRecord]) -> List[str]:
    """Header of the result table."""
    params = sorted({name for record in records for name in record.params})
    results = sorted(
        {name for record in records for name in record.results()} - set(params) - {"suite", "seed"}
    )
    return ["suite", "seed", *params, *results]


def flatten(record: ExperimentRecord) -> Dict[str, Scalar]:
    """One record as a flat key -> value map (without fixing the key order)."""
    row: Dict[str, Scalar] = {"suite": record.suite.value, "seed": record.seed}
    row.update(record.params)
    for name, value in record.results().items():
        row.setdefault(name, value)
    return row


def format_cell(value: Optional[Scalar]) -> str:
    """CSV text of a cell: shortest float repr, lowercase booleans, empty for missing."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _json_value(value: Scalar) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def render_csv(records: Sequence[ExperimentRecord]) -> str:
    header = columns(records)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for record in records:
        row = flatten(record)
        writer.writerow([format_cell(row.get(name)) for name in header])
    return buffer.getvalue()


def render_json(records: Sequence[ExperimentRecord]) -> str:
    header = columns(records)
    objects = []
    for record in records:
        row = flatten(record)
        objects.append({name: _json_value(row[name]) for name in header if name in row})
    return json.dumps(objects, indent=2, ensure_ascii=False) + "\n"


def emit(
    records: Sequence[ExperimentRecord],
    fmt: OutputFormat,
    path: Optional[Path] = None,
    stream: Optional[TextIO] = None,
) -> str:
    """
    Serialize records and write them to ``path`` or ``stream``.

    Args:
        records: Non-empty list of records.
        fmt: CSV or JSON.
        path: Destination file; when absent the text goes to ``stream``.
        stream: Text stream used when no path is given.

    Returns:
        The serialized text.

    Raises:
        InvalidArgumentError: If ``records`` is empty.
        OutputError: If the destination cannot be written.
    """
    if not records:
        raise InvalidArgumentError("there are no records to emit")
    text = render_csv(records) if fmt is OutputFormat.CSV else render_json(records)
    if path is not None:
        _write(Path(path), text)
        logger.info(f"Wrote {len(records)} record(s) to {path}")
    elif stream is not None:
        stream.write(text)
        stream.flush()
    return text


def _write(path: Path, text: str) -> None:
    try:
        with path.open("w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror or exc}", details=str(path)) from exc


def _bounds(values: List[float]) -> Tuple[float, float]:
    finite = [value for value in values if math.isfinite(value)]
    if not finite:
        return 0.0, 1.0
    low, high = min(finite), max(finite)
    if low == high:
        pad = abs(low) * 0.05 or 0.5
        return low - pad, high + pad
    return low, high


def _number(value: float) -> str:
    return f"{value:.4g}"


def render_svg(plot: PlotSpec) -> str:
    """
    Render a line plot as an 800x600 SVG 1.1 document.

    Axes are drawn with <line>, labels with <text>, and every series is
    exactly one <polyline>; the legend uses <line> swatches.
    """
    x_low, x_high = _bounds([x for series in plot.series for x in series.x])
    y_low, y_high = _bounds([y for series in plot.series for y in series.y])
    left, top = _MARGIN_LEFT, _MARGIN_TOP
    right, bottom = SVG_WIDTH - _MARGIN_RIGHT, SVG_HEIGHT - _MARGIN_BOTTOM

    def sx(x: float) -> float:
        return left + (x - x_low) / (x_high - x_low) * (right - left)

    def sy(y: float) -> float:
        return bottom - (y - y_low) / (y_high - y_low) * (bottom - top)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SVG_WIDTH}" '
        f'height="{SVG_HEIGHT}" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">',
        f'<rect x="0" y="0" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>',
        f'<text x="{SVG_WIDTH / 2:.1f}" y="28" text-anchor="middle" font-size="18">'
        f"{escape(plot.title)}</text>",
        f'<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{bottom}" stroke="black"/>',
        f'<text x="{(left + right) / 2:.1f}" y="{SVG_HEIGHT - 20}" text-anchor="middle" '
        f'font-size="14">{escape(plot.x_label)}</text>',
        f'<text x="24" y="{(top + bottom) / 2:.1f}" text-anchor="middle" font-size="14" '
        f'transform="rotate(-90 24 {(top + bottom) / 2:.1f})">{escape(plot.y_label)}</text>',
        f'<text x="{left}" y="{bottom + 20}" text-anchor="middle" font-size="11">'
        f"{_number(x_low)}</text>",
        f'<text x="{right}" y="{bottom + 20}" text-anchor="middle" font-size="11">'
        f"{_number(x_high)}</text>",
        f'<text x="{left - 8}" y="{bottom}" text-anchor="end" font-size="11">'
        f"{_number(y_low)}</text>",
        f'<text x="{left - 8}" y="{top + 4}" text-anchor="end" font-size="11">'
        f"{_number(y_high)}</text>",
    ]
    for index, series in enumerate(plot.series):
        colour = _PALETTE[index % len(_PALETTE)]
        points = " ".join(
            f"{sx(x):.2f},{sy(y):.2f}"
            for x, y in zip(series.x, series.y)
            if math.isfinite(x) and math.isfinite(y)
        )
        parts.append(
            f'<polyline fill="none" stroke="{colour}" stroke-width="2" points="{points}"/>'
        )
        legend_y = top + 10 + 22 * index
        parts.append(
            f'<line x1="{right + 15}" y1="{legend_y}" x2="{right + 40}" y2="{legend_y}" '
            f'stroke="{colour}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{right + 46}" y="{legend_y + 4}" font-size="12">{escape(series.name)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_svg(plot: PlotSpec, path: Path) -> None:
    """Write the rendered plot; an unwritable path raises OutputError."""
    _write(Path(path), render_svg(plot))
    logger.info(f"Wrote plot '{plot.title}' to {path}")

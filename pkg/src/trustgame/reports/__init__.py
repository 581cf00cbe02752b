"""Report emitters: CSV, stacked-bar SVG panels and text tables."""

import logging
from collections.abc import Sequence
from enum import StrEnum
from pathlib import Path

from trustgame.exceptions import ReportError
from trustgame.experiments.compare import EgtBaseline
from trustgame.models.experiment import CellResult
from trustgame.reports.csv_report import render_csv, report_rows
from trustgame.reports.svg_report import write_svg_report
from trustgame.reports.text_report import render_text

logger = logging.getLogger(__name__)

CSV_FILE = "results.csv"
TEXT_FILE = "results.txt"


class ReportFormat(StrEnum):
    """Supported report formats."""

    CSV = "csv"
    SVG_STACKED_BARS = "svg-stacked-bars"
    TEXT = "text"


def emit_report(
    results: Sequence[CellResult],
    fmt: ReportFormat | str,
    output_dir: Path,
    baselines: Sequence[EgtBaseline] = (),
) -> list[Path]:
    """Write one report format into ``output_dir`` and return the files written.

    Raises:
        ReportError: If results are empty or the format is unknown.
    """
    if not results:
        raise ReportError("No results to report")
    try:
        fmt = ReportFormat(fmt)
    except ValueError as e:
        raise ReportError(f"Unknown report format: {fmt}") from e

    output_dir.mkdir(parents=True, exist_ok=True)
    match fmt:
        case ReportFormat.CSV:
            path = output_dir / CSV_FILE
            path.write_text(render_csv(report_rows(results, baselines)), newline="")
            written = [path]
        case ReportFormat.SVG_STACKED_BARS:
            written = write_svg_report(results, output_dir)
        case ReportFormat.TEXT:
            path = output_dir / TEXT_FILE
            path.write_text(render_text(results, baselines))
            written = [path]

    logger.info("Wrote %s report: %s", fmt.value, ", ".join(p.name for p in written))
    return written


__all__ = ["ReportFormat", "emit_report"]

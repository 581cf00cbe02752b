"""Versioned CSV export of cell results.

Columns, in order: schema_version, kind, mode, epsilon, c_R, b_fo, treatment, round,
profile, metric, value, valid_games, invalid_games. ``kind`` is one of:

- ``cell``: one per cell, with game counts; ``metric`` = degenerate, ``value`` true/false
- ``profile``: one per (cell, profile) with the over-round frequency
- ``marginal``: one per (cell, round, metric)
- ``role_average``: one per (cell, metric), averaged over rounds
- ``egt``: stationary prediction per (cell, profile) and per (cell, metric)

Degenerate cells only get their ``cell`` row. Floats use ``format(x, ".12g")``.
"""

import csv
import io
from collections.abc import Mapping, Sequence

from trustgame.exceptions import ReportError
from trustgame.experiments.compare import EgtBaseline
from trustgame.models.experiment import CellResult, RoleShares
from trustgame.models.game import format_float
from trustgame.models.harness import CellKey

CSV_SCHEMA_VERSION = 1

COLUMNS = [
    "schema_version",
    "kind",
    "mode",
    "epsilon",
    "c_R",
    "b_fo",
    "treatment",
    "round",
    "profile",
    "metric",
    "value",
    "valid_games",
    "invalid_games",
]

METRICS = ("trust", "developer_comply", "regulator_comply")


def _row(cell: CellKey, kind: str, **fields: str) -> dict[str, str]:
    row = dict.fromkeys(COLUMNS, "")
    row.update(
        schema_version=str(CSV_SCHEMA_VERSION),
        kind=kind,
        mode=cell.mode.value,
        epsilon=format_float(cell.epsilon),
        c_R=format_float(cell.c_R),
        b_fo=format_float(cell.b_fo),
        treatment=cell.treatment,
    )
    row.update(fields)
    return row


def _metric_rows(cell: CellKey, kind: str, shares: RoleShares, **fields: str) -> list[dict]:
    return [
        _row(cell, kind, metric=metric, value=format_float(getattr(shares, metric)), **fields)
        for metric in METRICS
    ]


def report_rows(
    results: Sequence[CellResult], baselines: Sequence[EgtBaseline] = ()
) -> list[dict[str, str]]:
    """Flatten results (and optional evolutionary baselines) into CSV rows."""
    by_cell: Mapping[CellKey, EgtBaseline] = {b.cell: b for b in baselines}
    rows: list[dict[str, str]] = []
    for result in results:
        cell = result.cell
        rows.append(
            _row(
                cell,
                "cell",
                metric="degenerate",
                value="true" if result.degenerate else "false",
                valid_games=str(result.valid_games),
                invalid_games=str(result.invalid_games),
            )
        )
        if not result.degenerate:
            rows.extend(
                _row(cell, "profile", profile=code, value=format_float(freq))
                for code, freq in result.profile_frequencies.items()
            )
            for marginals in result.per_round_marginals:
                rows.extend(
                    _metric_rows(cell, "marginal", marginals, round=str(marginals.round_index))
                )
            rows.extend(_metric_rows(cell, "role_average", result.role_average))

        baseline = by_cell.get(cell)
        if baseline is not None:
            rows.extend(
                _row(cell, "egt", profile=code, value=format_float(prob))
                for code, prob in baseline.distribution.items()
            )
            rows.extend(_metric_rows(cell, "egt", baseline.marginals))
    return rows


def render_csv(rows: Sequence[Mapping[str, str]]) -> str:
    """CSV text with a header row and ``\\n`` line endings."""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


def parse_csv(text: str) -> list[dict[str, str]]:
    """Rows of a CSV produced by :func:`render_csv`, values kept as text."""
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != COLUMNS:
        raise ReportError(f"Unexpected CSV columns: {reader.fieldnames}")
    return list(reader)


def table_csv(header: Sequence[str], rows: Sequence[Sequence[float | str]]) -> str:
    """Plain CSV for the payoff and stationary-distribution commands."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(
            [format_float(value) if isinstance(value, float) else value for value in row]
        )
    return buffer.getvalue()

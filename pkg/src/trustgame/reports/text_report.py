"""Plain-text tables of cell results, rendered with rich."""

import io
from collections.abc import Sequence

from rich.console import Console
from rich.table import Table

from trustgame.experiments.compare import EgtBaseline
from trustgame.models.experiment import CellResult
from trustgame.models.game import TrustMode
from trustgame.reports.svg_report import legend_codes


def _share(value: float) -> str:
    return f"{value:.2f}"


def results_table(
    results: Sequence[CellResult], mode: TrustMode, baselines: Sequence[EgtBaseline] = ()
) -> Table:
    """One row per cell of a mode; EGT rows follow their cell when given."""
    codes = legend_codes(mode)
    by_cell = {b.cell: b for b in baselines}
    table = Table(title=f"{mode.value} trust")
    for header in ("epsilon", "c_R", "b_fo", "treatment", "valid", "invalid", *codes):
        table.add_column(header, justify="left" if header == "treatment" else "right")
    for header in ("trust", "dev C", "reg C"):
        table.add_column(header, justify="right")

    for result in results:
        cell = result.cell
        key = [f"{cell.epsilon:g}", f"{cell.c_R:g}", f"{cell.b_fo:g}", cell.treatment]
        counts = [str(result.valid_games), str(result.invalid_games)]
        if result.degenerate:
            table.add_row(*key, *counts, *(["-"] * (len(codes) + 3)))
        else:
            shares = result.role_average
            table.add_row(
                *key,
                *counts,
                *(_share(result.profile_frequencies[code]) for code in codes),
                _share(shares.trust),
                _share(shares.developer_comply),
                _share(shares.regulator_comply),
            )
        baseline = by_cell.get(cell)
        if baseline is not None:
            table.add_row(
                "", "", "", "egt", "", "",
                *(_share(baseline.distribution[code]) for code in codes),
                _share(baseline.marginals.trust),
                _share(baseline.marginals.developer_comply),
                _share(baseline.marginals.regulator_comply),
                style="dim",
            )
    return table


def render_text(results: Sequence[CellResult], baselines: Sequence[EgtBaseline] = ()) -> str:
    """Tables for every mode present, as uncolored text."""
    buffer = io.StringIO()
    console = Console(file=buffer, width=200, color_system=None, force_terminal=False)
    for mode in TrustMode:
        subset = [r for r in results if r.cell.mode is mode]
        if subset:
            console.print(results_table(subset, mode, baselines))
    return buffer.getvalue()

"""Stacked-bar SVG panels: profile frequencies against b_fo."""

import logging
from collections.abc import Sequence
from pathlib import Path

from jinja2 import Environment, PackageLoader, select_autoescape

from trustgame.game.payoffs import enumerate_profiles
from trustgame.models.experiment import CellResult
from trustgame.models.game import TrustMode, format_float

logger = logging.getLogger(__name__)

WIDTH = 560
HEIGHT = 360
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 50, 110, 40, 50

# Fixed legend order follows the profile enumeration; one color per profile.
PALETTE = (
    "#1b9e77",
    "#66c2a5",
    "#7570b3",
    "#a6a1d6",
    "#d95f02",
    "#fc8d62",
    "#e7298a",
    "#4d4d4d",
)

_ENV = Environment(
    loader=PackageLoader("trustgame.reports", "templates"),
    autoescape=select_autoescape(enabled_extensions=("svg.j2", "html.j2")),
    trim_blocks=True,
    lstrip_blocks=True,
)


def _coord(value: float) -> str:
    return f"{value:.2f}"


def legend_codes(mode: TrustMode) -> list[str]:
    """Profile codes in stacking order, bottom first."""
    return [profile.code(mode) for profile in enumerate_profiles(mode)]


def panel_title(result: CellResult) -> str:
    cell = result.cell
    title = (
        f"{cell.mode.value} trust, epsilon={format_float(cell.epsilon)}, "
        f"c_R={format_float(cell.c_R)}"
    )
    if cell.treatment != "control":
        title += f", {cell.treatment}"
    return title


def panel_filename(result: CellResult) -> str:
    cell = result.cell
    treatment = cell.treatment.replace(":", "-")
    numbers = f"eps{format_float(cell.epsilon)}_cR{format_float(cell.c_R)}"
    return f"panel_{cell.mode.value}_{numbers}_{treatment}.svg"


def render_panel(results: Sequence[CellResult]) -> str:
    """SVG of one panel; ``results`` share mode, epsilon, c_R and treatment."""
    first = results[0]
    mode = first.cell.mode
    left, right = MARGIN_LEFT, WIDTH - MARGIN_RIGHT
    top, bottom = MARGIN_TOP, HEIGHT - MARGIN_BOTTOM
    plot_height = bottom - top
    slot = (right - left) / len(results)
    bar_width = slot * 0.6
    codes = legend_codes(mode)

    bars = []
    for index, result in enumerate(sorted(results, key=lambda r: r.cell.b_fo)):
        x = left + index * slot + (slot - bar_width) / 2
        segments = []
        if not result.degenerate:
            stacked = 0.0
            for code, color in zip(codes, PALETTE, strict=True):
                frequency = result.profile_frequencies[code]
                stacked += frequency
                segments.append(
                    {
                        "profile": code,
                        "frequency": format_float(frequency),
                        "color": color,
                        "y": _coord(bottom - stacked * plot_height),
                        "height": _coord(frequency * plot_height),
                    }
                )
        bars.append(
            {
                "b_fo": format_float(result.cell.b_fo),
                "x": _coord(x),
                "width": _coord(bar_width),
                "center": _coord(x + bar_width / 2),
                "degenerate": result.degenerate,
                "valid": result.valid_games,
                "invalid": result.invalid_games,
                "segments": segments,
            }
        )

    cell = first.cell
    return _ENV.get_template("panel.svg.j2").render(
        width=WIDTH,
        height=HEIGHT,
        panel={
            "mode": cell.mode.value,
            "epsilon": format_float(cell.epsilon),
            "c_R": format_float(cell.c_R),
            "treatment": cell.treatment,
            "title": panel_title(first),
        },
        plot={
            "left": left,
            "right": right,
            "top": top,
            "bottom": bottom,
            "height": plot_height,
            "center": (left + right) / 2,
        },
        y_ticks=[
            {"y": _coord(bottom - share * plot_height + 3), "label": f"{share:g}"}
            for share in (0.0, 0.25, 0.5, 0.75, 1.0)
        ],
        bars=bars,
        legend_x=right + 20,
        legend=[
            {"profile": code, "color": color, "y": top + 18 * i}
            for i, (code, color) in enumerate(zip(codes, PALETTE, strict=True))
        ],
    )


def group_panels(results: Sequence[CellResult]) -> dict[tuple, list[CellResult]]:
    """Results per panel, in order of first appearance."""
    panels: dict[tuple, list[CellResult]] = {}
    for result in results:
        panels.setdefault(result.cell.panel, []).append(result)
    return panels


def write_svg_report(results: Sequence[CellResult], output_dir: Path) -> list[Path]:
    """One SVG per panel plus an ``index.html`` that shows them all."""
    output_dir.mkdir(parents=True, exist_ok=True)
    written = []
    index = []
    for panel in group_panels(results).values():
        path = output_dir / panel_filename(panel[0])
        path.write_text(render_panel(panel))
        written.append(path)
        index.append({"filename": path.name, "title": panel_title(panel[0])})

    index_path = output_dir / "index.html"
    index_path.write_text(_ENV.get_template("index.html.j2").render(panels=index))
    logger.debug("Wrote %d SVG panel(s) to %s", len(written), output_dir)
    return [*written, index_path]

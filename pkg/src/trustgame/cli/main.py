"""Command-line interface for trustgame."""

import asyncio
import logging
import sys
from pathlib import Path
from typing import Annotated

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from trustgame.egt.stationary import analyze, simulate_chain
from trustgame.exceptions import TrustgameError
from trustgame.experiments.ablation import ablation_config, run_personality_ablation
from trustgame.experiments.compare import egt_baselines
from trustgame.experiments.config import load_config
from trustgame.experiments.runner import ExperimentRun, preview_prompts, replay, run_experiment
from trustgame.game.equilibria import find_pure_nash
from trustgame.game.payoffs import enumerate_profiles, payoff_table
from trustgame.models.egt import EgtConfig
from trustgame.models.experiment import ExperimentConfig
from trustgame.models.game import GameParams, TrustMode
from trustgame.reports import ReportFormat, emit_report
from trustgame.reports.csv_report import table_csv
from trustgame.settings import get_settings
from trustgame.workflows.state import Severity


def _setup_logging(verbose: bool = False) -> None:
    """Configure logging with Rich handler."""
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(rich_tracebacks=True, show_path=False)],
    )
    # Quiet noisy libraries
    logging.getLogger("httpx").setLevel(logging.WARNING)
    logging.getLogger("httpcore").setLevel(logging.WARNING)
    logging.getLogger("openai").setLevel(logging.WARNING)


def _configure_logfire() -> None:
    """Configure logfire if available and token is present."""
    settings = get_settings()
    if not settings.logfire_token:
        return

    try:
        import logfire

        logfire.configure(
            service_name="trustgame",
            send_to_logfire="if-token-present",
        )
        logfire.instrument_pydantic_ai()
    except ImportError:
        pass


app = typer.Typer(
    name="trustgame",
    help="Trust game between AI users, developers and regulators: payoffs, equilibria, "
    "evolutionary baselines and LLM-agent experiments.",
    no_args_is_help=True,
)
console = Console()


def _make_progress_callback(console: Console):
    """Create a Rich-based progress callback."""
    severity_styles = {
        Severity.INFO: ("blue", ""),
        Severity.SUCCESS: ("green", "✓"),
        Severity.WARNING: ("yellow", "!"),
        Severity.ERROR: ("red", "✗"),
    }

    def callback(severity: Severity, message: str) -> None:
        color, icon = severity_styles[severity]
        if icon:
            console.print(f"  [{color}]{icon}[/{color}] {message}")
        else:
            console.print(f"  [{color}]•[/{color}] {message}")

    return callback


ModeOption = Annotated[TrustMode, typer.Option("--mode", "-m", help="Trust mode.")]
EpsilonOption = Annotated[
    float | None, typer.Option("--epsilon", help="Risk factor on b_U for unsafe AI.")
]
RegulationCostOption = Annotated[float | None, typer.Option("--c-r", help="Regulation cost.")]
RewardOption = Annotated[
    float | None, typer.Option("--b-fo", help="Reward for catching defectors.")
]
VerboseOption = Annotated[bool, typer.Option("--verbose", "-v", help="Enable verbose logging.")]
OutputOption = Annotated[
    Path | None, typer.Option("--output-dir", "-o", help="Directory for transcripts and reports.")
]
ParallelismOption = Annotated[
    int | None, typer.Option("--parallelism", "-p", min=1, help="Games played concurrently.")
]
DryRunOption = Annotated[
    bool, typer.Option("--dry-run", help="Render prompts without calling any backend.")
]
ConfigArgument = Annotated[Path, typer.Argument(help="Experiment configuration (YAML).")]
CsvOption = Annotated[bool, typer.Option("--csv", help="Print CSV instead of a table.")]


def _params(epsilon: float | None, c_r: float | None, b_fo: float | None) -> GameParams:
    overrides = {"epsilon": epsilon, "c_R": c_r, "b_fo": b_fo}
    try:
        return GameParams(**{k: v for k, v in overrides.items() if v is not None})
    except ValidationError as e:
        raise typer.BadParameter(str(e)) from e


def _fail(error: Exception) -> None:
    console.print(f"[red bold]Error:[/red bold] {error}")
    raise typer.Exit(1)


def _load(path: Path) -> ExperimentConfig:
    try:
        return load_config(path)
    except TrustgameError as e:
        _fail(e)


@app.command()
def payoffs(
    mode: Annotated[
        TrustMode | None, typer.Option("--mode", "-m", help="Trust mode (default: both).")
    ] = None,
    epsilon: EpsilonOption = None,
    c_r: RegulationCostOption = None,
    b_fo: RewardOption = None,
    as_csv: CsvOption = False,
) -> None:
    """Print the payoff tables."""
    params = _params(epsilon, c_r, b_fo)
    modes = [mode] if mode else list(TrustMode)
    if as_csv:
        rows = [
            (m.value, profile.code(m), triple.user, triple.developer, triple.regulator)
            for m in modes
            for profile, triple in payoff_table(params, m)
        ]
        typer.echo(table_csv(("mode", "profile", "user", "developer", "regulator"), rows), nl=False)
        return

    for m in modes:
        table = Table(title=f"Payoffs, {m.value} trust")
        for header in ("profile", "user", "developer", "regulator"):
            table.add_column(header, justify="right")
        for profile, triple in payoff_table(params, m):
            table.add_row(
                profile.code(m),
                f"{triple.user:g}",
                f"{triple.developer:g}",
                f"{triple.regulator:g}",
            )
        console.print(table)


@app.command()
def nash(
    mode: ModeOption = TrustMode.CONDITIONAL,
    epsilon: EpsilonOption = None,
    c_r: RegulationCostOption = None,
    b_fo: RewardOption = None,
    strict: Annotated[
        bool, typer.Option("--strict", help="Require strict best responses.")
    ] = False,
) -> None:
    """List pure-strategy Nash equilibria."""
    params = _params(epsilon, c_r, b_fo)
    equilibria = find_pure_nash(params, mode, strict=strict)
    kind = "strict" if strict else "weak"
    if not equilibria:
        console.print(f"No {kind} pure Nash equilibria")
        return
    # Report in table order
    codes = [p.code(mode) for p in enumerate_profiles(mode) if p in equilibria]
    console.print(f"{kind.capitalize()} pure Nash equilibria: {', '.join(codes)}")


@app.command()
def egt(
    mode: ModeOption = TrustMode.CONDITIONAL,
    epsilon: EpsilonOption = None,
    c_r: RegulationCostOption = None,
    b_fo: RewardOption = None,
    population: Annotated[
        int, typer.Option("--population", "-Z", min=2, help="Population size.")
    ] = 100,
    beta: Annotated[float, typer.Option("--beta", min=0, help="Selection intensity.")] = 1.0,
    simulate: Annotated[
        int | None, typer.Option("--simulate", min=1, help="Also walk the chain this many steps.")
    ] = None,
    seed: Annotated[int, typer.Option("--seed", help="Seed for --simulate.")] = 0,
    as_csv: CsvOption = False,
) -> None:
    """Stationary distribution of the small-mutation evolutionary chain."""
    config = EgtConfig(Z=population, beta=beta, mode=mode, params=_params(epsilon, c_r, b_fo))
    try:
        result = analyze(config)
        frequencies = simulate_chain(config, simulate, seed) if simulate else None
    except TrustgameError as e:
        _fail(e)

    if as_csv:
        header = ["profile", "stationary"] + (["simulated"] if frequencies is not None else [])
        rows = [
            [code, float(prob)] + ([float(frequencies[i])] if frequencies is not None else [])
            for i, (code, prob) in enumerate(result.by_code().items())
        ]
        typer.echo(table_csv(header, rows), nl=False)
        return

    title = f"Stationary distribution, {mode.value} trust, Z={population}, beta={beta:g}"
    table = Table(title=title)
    table.add_column("profile")
    table.add_column("stationary", justify="right")
    if frequencies is not None:
        table.add_column("simulated", justify="right")
    for index, (code, prob) in enumerate(result.by_code().items()):
        row = [code, f"{prob:.6f}"]
        if frequencies is not None:
            row.append(f"{frequencies[index]:.6f}")
        table.add_row(*row)
    console.print(table)
    marginals = result.marginals()
    console.print(
        f"trust {marginals['trust']:.4f}  developer comply {marginals['developer_comply']:.4f}  "
        f"regulator comply {marginals['regulator_comply']:.4f}"
    )


def _print_prompts(config: ExperimentConfig) -> None:
    try:
        prompts = preview_prompts(config)
    except TrustgameError as e:
        _fail(e)
    for game, by_role in prompts.items():
        for role, prompt in by_role.items():
            console.rule(f"{game} / {role.value}")
            console.print(prompt, markup=False, highlight=False)


def _report_run(run: ExperimentRun) -> None:
    for fmt in ReportFormat:
        emit_report(run.results, fmt, run.output_dir)
    degenerate = sum(r.degenerate for r in run.results)
    console.print(f"\n[green bold]✓ {len(run.results)} cells aggregated[/green bold]")
    if degenerate:
        console.print(f"  [yellow]{degenerate} cell(s) without valid games[/yellow]")
    console.print(f"  [dim]Outputs in {run.output_dir}[/dim]\n")


def _execute(coro) -> ExperimentRun:
    try:
        return asyncio.run(coro)
    except KeyboardInterrupt:
        console.print("\n[yellow]Cancelled[/yellow]")
        sys.exit(130)
    except TrustgameError as e:
        _fail(e)


@app.command()
def run(
    config_path: ConfigArgument,
    output_dir: OutputOption = None,
    parallelism: ParallelismOption = None,
    dry_run: DryRunOption = False,
    verbose: VerboseOption = False,
) -> None:
    """Run an experiment sweep and write transcripts and reports."""
    _setup_logging(verbose)
    _configure_logfire()
    config = _load(config_path)
    if dry_run:
        _print_prompts(config)
        return

    console.print(f"\n[bold]trustgame[/bold] - {len(config.cells())} cells\n")
    result = _execute(
        run_experiment(
            config,
            output_dir=output_dir,
            parallelism=parallelism,
            on_progress=_make_progress_callback(console),
        )
    )
    _report_run(result)


@app.command()
def ablate(
    config_path: ConfigArgument,
    override: Annotated[
        bool,
        typer.Option(
            "--override",
            help="Keep the configuration's modes, rounds, epsilon and c_R lists.",
        ),
    ] = False,
    output_dir: OutputOption = None,
    parallelism: ParallelismOption = None,
    dry_run: DryRunOption = False,
    verbose: VerboseOption = False,
) -> None:
    """Run the personality ablation: a control plus one personality at a time."""
    _setup_logging(verbose)
    _configure_logfire()
    config = _load(config_path)
    if dry_run:
        _print_prompts(ablation_config(config, override=override))
        return

    console.print("\n[bold]trustgame[/bold] - personality ablation\n")
    result = _execute(
        run_personality_ablation(
            config,
            override=override,
            output_dir=output_dir,
            parallelism=parallelism,
            on_progress=_make_progress_callback(console),
        )
    )
    _report_run(result)


@app.command()
def report(
    transcripts: Annotated[Path, typer.Argument(help="Transcript file (JSON lines).")],
    fmt: Annotated[ReportFormat, typer.Option("--format", "-f", help="Report format.")] = (
        ReportFormat.CSV
    ),
    output_dir: OutputOption = None,
    with_egt: Annotated[
        bool, typer.Option("--egt", help="Attach evolutionary baselines per cell.")
    ] = False,
    population: Annotated[
        int, typer.Option("--population", "-Z", min=2, help="EGT population.")
    ] = 100,
    beta: Annotated[float, typer.Option("--beta", min=0, help="EGT selection intensity.")] = 1.0,
) -> None:
    """Re-emit a report from persisted transcripts."""
    try:
        results = asyncio.run(replay(transcripts))
        baselines = egt_baselines(results, Z=population, beta=beta) if with_egt else []
        written = emit_report(results, fmt, output_dir or transcripts.parent, baselines)
    except TrustgameError as e:
        _fail(e)
    for path in written:
        console.print(f"  [green]✓[/green] {path}")


@app.command("validate-config")
def validate_config(config_path: ConfigArgument) -> None:
    """Validate an experiment configuration and summarize its sweep."""
    config = _load(config_path)
    cells = config.cells()
    console.print(f"[green]✓[/green] {config_path} is valid")
    console.print(f"  cells: {len(cells)}")
    console.print(f"  games: {len(cells) * config.replications}")
    console.print(f"  rounds per game: {config.rounds}")
    console.print(f"  backend: {config.backend.kind.value}")
    console.print(f"  treatments: {', '.join(t.name for t in config.treatments)}")


if __name__ == "__main__":
    app()

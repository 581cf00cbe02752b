"""Sweep execution: play every game of every cell and persist the transcripts."""

import asyncio
import json
import logging
import zlib
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from pathlib import Path

import aiofiles
import numpy as np

from trustgame.agents.backends import Backend, build_registry
from trustgame.agents.prompts import load_template, render_game_prompts
from trustgame.experiments.aggregate import aggregate_transcripts
from trustgame.experiments.config import dump_config
from trustgame.models.experiment import CellResult, ExperimentConfig
from trustgame.models.game import Role
from trustgame.models.harness import CellKey, GameSpec, GameTranscript, default_agents
from trustgame.settings import get_settings
from trustgame.storage.transcripts import load_transcripts, write_transcripts
from trustgame.workflows.game import play_game
from trustgame.workflows.state import ProgressCallback, Severity, _noop_progress

logger = logging.getLogger(__name__)

BACKEND_ID = "default"
CELLS_FILE = "cells.json"
CONFIG_FILE = "config.yaml"


@dataclass
class ExperimentRun:
    """Outcome of a sweep."""

    results: list[CellResult]
    transcripts: list[GameTranscript]
    output_dir: Path | None = None


def game_seed(master_seed: int, cell: CellKey, replicate: int) -> int:
    """Seed of one game, stable across runs and independent of execution order."""
    entropy = [master_seed, zlib.crc32(cell.slug.encode()), replicate]
    return int(np.random.SeedSequence(entropy).generate_state(1)[0])


def game_id(cell: CellKey, replicate: int) -> str:
    return f"{cell.slug}-r{replicate:03d}"


def build_game_spec(config: ExperimentConfig, cell: CellKey, replicate: int) -> GameSpec:
    """Game spec of one replicate of a cell."""
    agents = config.treatment(cell.treatment).apply(default_agents(BACKEND_ID))
    return GameSpec(
        mode=cell.mode,
        params=config.params_for(cell),
        rounds=config.rounds,
        agents=agents,
        template=config.template,
        parse_retries=config.parse_retries,
        seed=game_seed(config.seed, cell, replicate),
        replicate=replicate,
    )


def preview_prompts(config: ExperimentConfig) -> dict[str, dict[Role, str]]:
    """Round-1 prompts of the first replicate of every cell, without contacting backends."""
    template = load_template(config.template)
    return {
        game_id(cell, 0): render_game_prompts(build_game_spec(config, cell, 0), template)
        for cell in config.cells()
    }


def _output_dir(config: ExperimentConfig, output_dir: Path | None) -> Path:
    return Path(output_dir or config.output_dir or get_settings().output_dir)


async def _write_results(out: Path, config: ExperimentConfig, run: ExperimentRun) -> None:
    settings = get_settings()
    await write_transcripts(out / settings.transcript_file, run.transcripts)
    cells = [result.model_dump(mode="json") for result in run.results]
    async with aiofiles.open(out / CELLS_FILE, "w", encoding="utf-8") as f:
        await f.write(json.dumps(cells, indent=2, sort_keys=True) + "\n")
    async with aiofiles.open(out / CONFIG_FILE, "w", encoding="utf-8") as f:
        await f.write(dump_config(config))


async def run_cells(
    config: ExperimentConfig,
    cells: Sequence[CellKey],
    *,
    backends: Mapping[str, Backend] | None = None,
    output_dir: Path | None = None,
    parallelism: int | None = None,
    persist: bool = True,
    on_progress: ProgressCallback = _noop_progress,
) -> ExperimentRun:
    """Play ``config.replications`` games per cell and aggregate them.

    Games run concurrently up to the parallelism bound; transcripts keep sweep order
    regardless of completion order.
    """
    registry = backends if backends is not None else build_registry({BACKEND_ID: config.backend})
    template = load_template(config.template)
    limit = parallelism or config.parallelism or get_settings().parallelism
    semaphore = asyncio.Semaphore(limit)

    async def _play(cell: CellKey, replicate: int) -> GameTranscript:
        async with semaphore:
            return await play_game(
                build_game_spec(config, cell, replicate),
                registry,
                template=template,
                game_id=game_id(cell, replicate),
                cell=cell,
            )

    jobs = [(cell, r) for cell in cells for r in range(config.replications)]
    on_progress(Severity.INFO, f"Playing {len(jobs)} games in {len(cells)} cells")
    logger.info("Running %d games (parallelism %d)", len(jobs), limit)
    transcripts = list(await asyncio.gather(*(_play(cell, r) for cell, r in jobs)))

    invalid = sum(not t.valid for t in transcripts)
    severity = Severity.WARNING if invalid else Severity.SUCCESS
    on_progress(severity, f"{len(transcripts) - invalid} valid, {invalid} invalid games")

    run = ExperimentRun(results=aggregate_transcripts(transcripts, cells), transcripts=transcripts)
    if persist:
        run.output_dir = _output_dir(config, output_dir)
        await _write_results(run.output_dir, config, run)
        on_progress(Severity.SUCCESS, f"Results written to {run.output_dir}")
    return run


async def run_experiment(config: ExperimentConfig, **kwargs) -> ExperimentRun:
    """Run the whole sweep. Keyword arguments are passed to :func:`run_cells`."""
    return await run_cells(config, config.cells(), **kwargs)


async def replay(path: Path) -> list[CellResult]:
    """Recompute cell results from a persisted transcript file alone."""
    transcripts = await load_transcripts(path)
    return aggregate_transcripts(transcripts)

"""JSON-lines transcript persistence.

Each game is stored as one ``game`` line followed by one ``round`` line per completed
round. Keys are sorted and no timestamps are written, so identical runs produce
byte-identical files.
"""

import json
import logging
from collections.abc import Iterable
from pathlib import Path
from typing import Annotated, Literal

import aiofiles
from pydantic import BaseModel, Field, TypeAdapter, ValidationError

from trustgame.exceptions import TranscriptError
from trustgame.models.harness import (
    TRANSCRIPT_SCHEMA_VERSION,
    AgentTurn,
    BackendConfig,
    CellKey,
    GameSpec,
    GameTranscript,
    RoundRecord,
)

logger = logging.getLogger(__name__)


class GameLine(BaseModel):
    """Header line of one game."""

    kind: Literal["game"] = "game"
    schema_version: int = TRANSCRIPT_SCHEMA_VERSION
    game_id: str
    cell: CellKey | None
    replicate: int
    spec: GameSpec
    backend: BackendConfig
    rounds_completed: int
    valid: bool
    failure_reason: str | None
    pending_turns: list[AgentTurn]


class RoundLine(BaseModel):
    """One completed round of a game."""

    kind: Literal["round"] = "round"
    schema_version: int = TRANSCRIPT_SCHEMA_VERSION
    game_id: str
    record: RoundRecord


TranscriptLine = Annotated[GameLine | RoundLine, Field(discriminator="kind")]
_LINE_ADAPTER = TypeAdapter(TranscriptLine)


def _dump(line: BaseModel) -> str:
    return json.dumps(line.model_dump(mode="json"), sort_keys=True, ensure_ascii=False)


def transcript_lines(transcript: GameTranscript) -> list[str]:
    """Serialize one transcript into its JSON lines."""
    header = GameLine(
        game_id=transcript.game_id,
        cell=transcript.cell,
        replicate=transcript.spec.replicate,
        spec=transcript.spec,
        backend=transcript.backend,
        rounds_completed=len(transcript.records),
        valid=transcript.valid,
        failure_reason=transcript.failure_reason,
        pending_turns=transcript.pending_turns,
    )
    rounds = [RoundLine(game_id=transcript.game_id, record=r) for r in transcript.records]
    return [_dump(header), *(_dump(line) for line in rounds)]


async def write_transcripts(
    path: Path, transcripts: Iterable[GameTranscript], *, append: bool = False
) -> Path:
    """Write transcripts to a JSON-lines file, creating parent directories."""
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    async with aiofiles.open(path, "a" if append else "w", encoding="utf-8") as f:
        for transcript in transcripts:
            for line in transcript_lines(transcript):
                await f.write(line + "\n")
            count += 1
    logger.debug("Wrote %d transcript(s) to %s", count, path)
    return path


async def load_transcripts(path: Path) -> list[GameTranscript]:
    """Rebuild transcripts from a JSON-lines file, in file order.

    Raises:
        TranscriptError: If the file is unreadable, a line does not validate, the schema
            version is unknown, or round lines do not match their game line.
    """
    try:
        async with aiofiles.open(path, encoding="utf-8") as f:
            content = await f.read()
    except OSError as e:
        raise TranscriptError(f"Cannot read transcripts from {path}: {e}") from e

    transcripts: list[GameTranscript] = []
    expected: dict[str, int] = {}
    for number, raw in enumerate(content.splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            line = _LINE_ADAPTER.validate_json(raw)
        except ValidationError as e:
            raise TranscriptError(f"{path}:{number}: invalid transcript line: {e}") from e
        if line.schema_version != TRANSCRIPT_SCHEMA_VERSION:
            raise TranscriptError(
                f"{path}:{number}: unsupported schema version {line.schema_version}"
            )

        if isinstance(line, GameLine):
            transcripts.append(
                GameTranscript(
                    game_id=line.game_id,
                    cell=line.cell,
                    spec=line.spec,
                    backend=line.backend,
                    valid=line.valid,
                    failure_reason=line.failure_reason,
                    pending_turns=line.pending_turns,
                )
            )
            expected[line.game_id] = line.rounds_completed
            continue

        if not transcripts or transcripts[-1].game_id != line.game_id:
            raise TranscriptError(f"{path}:{number}: round line without its game line")
        transcripts[-1].records.append(line.record)

    for transcript in transcripts:
        if len(transcript.records) != expected[transcript.game_id]:
            raise TranscriptError(f"{path}: game {transcript.game_id} is missing round lines")
    logger.debug("Loaded %d transcript(s) from %s", len(transcripts), path)
    return transcripts

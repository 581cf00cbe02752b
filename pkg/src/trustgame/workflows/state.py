"""State for the game workflow."""

from collections.abc import Callable
from dataclasses import dataclass
from enum import StrEnum
from typing import Any

from trustgame.models.harness import GameTranscript


class Severity(StrEnum):
    """Severity levels for progress messages."""

    INFO = "info"
    SUCCESS = "success"
    WARNING = "warning"
    ERROR = "error"


ProgressCallback = Callable[[Severity, str], None]


def _noop_progress(severity: Severity, message: str) -> None:
    """Default no-op progress callback."""


@dataclass
class GameState:
    """Shared state for one game."""

    transcript: GameTranscript
    template: str

    # Backend shared by all three agents (see trustgame.agents.backends.Backend)
    backend: Any

    # CLI provides a Rich-based implementation
    on_progress: ProgressCallback = _noop_progress

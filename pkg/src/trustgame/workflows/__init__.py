"""Workflow orchestration."""

from trustgame.workflows.game import Abort, QueryAgents, SettleRound, game_graph, play_game
from trustgame.workflows.state import GameState, ProgressCallback, Severity

__all__ = [
    # Graph and nodes
    "game_graph",
    "play_game",
    "Abort",
    "QueryAgents",
    "SettleRound",
    # State
    "GameState",
    "ProgressCallback",
    "Severity",
]

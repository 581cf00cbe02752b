"""Finite-population evolutionary baseline over monomorphic profiles."""

from trustgame.egt.dynamics import build_transition_matrix, fixation_probability
from trustgame.egt.stationary import analyze, simulate_chain, stationary_distribution

__all__ = [
    "analyze",
    "build_transition_matrix",
    "fixation_probability",
    "simulate_chain",
    "stationary_distribution",
]

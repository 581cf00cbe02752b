"""Payoff engine and pure-strategy equilibrium analysis."""

from trustgame.game.equilibria import find_pure_nash, unilateral_deviations
from trustgame.game.payoffs import enumerate_profiles, payoff, payoff_table

__all__ = [
    "enumerate_profiles",
    "find_pure_nash",
    "payoff",
    "payoff_table",
    "unilateral_deviations",
]

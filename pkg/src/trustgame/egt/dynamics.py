"""Fixation probabilities and the embedded chain over monomorphic profiles.

Each role is its own population of size Z. Strategies spread by pairwise comparison
(Fermi rule) with selection intensity beta. In the small-mutation limit the system
sits in one of the 8 monomorphic profiles and jumps when a single mutant of one role
fixates. Co-players stay monomorphic during an invasion, so the payoff difference
between mutant and resident is constant and fixation has a closed form.
"""

import logging

import numpy as np

from trustgame.exceptions import ParamsError
from trustgame.game.equilibria import unilateral_deviations
from trustgame.game.payoffs import enumerate_profiles, payoff
from trustgame.models.egt import EgtConfig
from trustgame.models.game import ROLES

logger = logging.getLogger(__name__)


def fixation_probability(delta: float, Z: int, beta: float) -> float:
    """Probability that a single mutant with payoff advantage ``delta`` takes over.

    rho = (1 - exp(-beta * delta)) / (1 - exp(-Z * beta * delta)), and 1/Z under
    neutral drift. Both branches use expm1 and factor out the dominant exponential,
    so large |beta * delta * Z| returns the analytic limit instead of overflowing.
    """
    if Z < 2:
        raise ParamsError(f"Population size must be at least 2, got {Z}")
    if beta < 0:
        raise ParamsError(f"Selection intensity must be non-negative, got {beta}")

    x = beta * delta
    if x == 0:
        return 1.0 / Z
    if x > 0:
        return float(np.expm1(-x) / np.expm1(-Z * x))
    # x < 0: (e^-x - 1) / (e^-Zx - 1) = e^{(Z-1)x} (1 - e^x) / (1 - e^{Zx})
    return float(np.exp((Z - 1) * x) * np.expm1(x) / np.expm1(Z * x))


def build_transition_matrix(config: EgtConfig) -> np.ndarray:
    """Row-stochastic 8x8 matrix of the embedded chain, states in table order.

    From state s a role is picked uniformly (1/3) to receive a mutant playing that
    role's other action; the move to the deviant profile s' happens with the mutant's
    fixation probability. The diagonal keeps the remaining mass.
    """
    states = enumerate_profiles(config.mode)
    index = {state: i for i, state in enumerate(states)}
    n = len(states)
    matrix = np.zeros((n, n), dtype=float)

    for i, state in enumerate(states):
        resident = payoff(state, config.params, config.mode)
        for role, deviant in unilateral_deviations(state):
            mutant = payoff(deviant, config.params, config.mode)
            delta = mutant.for_role(role) - resident.for_role(role)
            rho = fixation_probability(delta, config.Z, config.beta)
            matrix[i, index[deviant]] = rho / len(ROLES)
        matrix[i, i] = 1.0 - matrix[i].sum()

    logger.debug(
        "Built %s transition matrix (Z=%d, beta=%g)", config.mode, config.Z, config.beta
    )
    return matrix

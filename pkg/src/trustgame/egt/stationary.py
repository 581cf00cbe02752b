"""Stationary distribution of the embedded chain, analytic and by Monte Carlo."""

import bisect
import logging

import numpy as np
import scipy.linalg

from trustgame.egt.dynamics import build_transition_matrix
from trustgame.exceptions import ParamsError, StationaryDistributionError
from trustgame.game.payoffs import enumerate_profiles
from trustgame.models.egt import EgtConfig, StationaryResult

logger = logging.getLogger(__name__)

RESIDUAL_TOLERANCE = 1e-9
POWER_ITERATIONS = 100_000


def _residual(pi: np.ndarray, matrix: np.ndarray) -> float:
    return float(np.max(np.abs(pi @ matrix - pi)))


def _normalize(pi: np.ndarray) -> np.ndarray:
    pi = np.clip(np.real(pi), 0.0, None)
    return pi / pi.sum()


def _power_iteration(matrix: np.ndarray) -> np.ndarray:
    n = matrix.shape[0]
    pi = np.full(n, 1.0 / n)
    for _ in range(POWER_ITERATIONS):
        nxt = pi @ matrix
        if np.max(np.abs(nxt - pi)) < 1e-12:
            return nxt
        pi = nxt
    return pi


def stationary_distribution(matrix: np.ndarray) -> np.ndarray:
    """Left eigenvector of a row-stochastic matrix for eigenvalue 1, summing to 1.

    Solves pi (P - I) = 0 with one equation replaced by sum(pi) = 1. A singular
    system (reducible chain) falls back to power iteration.

    Raises:
        ParamsError: If the matrix is not square and row-stochastic.
        StationaryDistributionError: If the residual ||pi P - pi||_inf stays above 1e-9.
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ParamsError(f"Transition matrix must be square, got shape {matrix.shape}")
    if np.any(matrix < 0) or not np.allclose(matrix.sum(axis=1), 1.0, atol=1e-9):
        raise ParamsError("Transition matrix must be row-stochastic")

    n = matrix.shape[0]
    system = matrix.T - np.eye(n)
    system[-1, :] = 1.0
    rhs = np.zeros(n)
    rhs[-1] = 1.0

    try:
        pi = _normalize(scipy.linalg.solve(system, rhs))
    except (scipy.linalg.LinAlgError, ValueError):
        logger.debug("Linear solve failed, falling back to power iteration")
        pi = _normalize(_power_iteration(matrix))

    residual = _residual(pi, matrix)
    if residual > RESIDUAL_TOLERANCE:
        pi = _normalize(_power_iteration(matrix))
        residual = _residual(pi, matrix)
    if residual > RESIDUAL_TOLERANCE:
        raise StationaryDistributionError(
            f"Stationary distribution residual {residual:.3e} exceeds {RESIDUAL_TOLERANCE:g}"
        )
    return pi


def analyze(config: EgtConfig) -> StationaryResult:
    """Transition matrix and stationary distribution for one configuration."""
    matrix = build_transition_matrix(config)
    pi = stationary_distribution(matrix)
    return StationaryResult(
        mode=config.mode,
        states=enumerate_profiles(config.mode),
        probabilities=pi.tolist(),
        transition_matrix=matrix.tolist(),
    )


def simulate_chain(config: EgtConfig, steps: int, seed: int) -> np.ndarray:
    """Empirical visit frequencies of a Monte Carlo walk on the embedded chain.

    The start state is drawn uniformly; the walk is fully determined by ``seed``.
    """
    if steps < 1:
        raise ParamsError(f"steps must be at least 1, got {steps}")

    matrix = build_transition_matrix(config)
    n = matrix.shape[0]
    cumulative = np.cumsum(matrix, axis=1)
    cumulative[:, -1] = 1.0
    rows = [row.tolist() for row in cumulative]

    rng = np.random.default_rng(seed)
    state = int(rng.integers(n))
    counts = [0] * n
    for draw in rng.random(steps).tolist():
        state = min(bisect.bisect_right(rows[state], draw), n - 1)
        counts[state] += 1

    return np.asarray(counts, dtype=float) / steps

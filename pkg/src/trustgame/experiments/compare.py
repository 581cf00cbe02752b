"""Evolutionary baselines for experiment cells."""

import logging
from collections.abc import Sequence

from pydantic import BaseModel

from trustgame.egt.stationary import analyze
from trustgame.models.egt import EgtConfig, StationaryResult
from trustgame.models.experiment import CellResult, RoleShares
from trustgame.models.game import GameParams, TrustMode
from trustgame.models.harness import CellKey

logger = logging.getLogger(__name__)


class EgtBaseline(BaseModel):
    """Stationary prediction for the parameters and mode of one cell."""

    cell: CellKey
    Z: int
    beta: float
    distribution: dict[str, float]
    marginals: RoleShares


def egt_baselines(
    results: Sequence[CellResult], *, Z: int = 100, beta: float = 1.0
) -> list[EgtBaseline]:
    """One baseline per cell; cells sharing params and mode share one chain solve."""
    solved: dict[tuple[TrustMode, GameParams], StationaryResult] = {}
    baselines = []
    for result in results:
        key = (result.cell.mode, result.params)
        if key not in solved:
            config = EgtConfig(Z=Z, beta=beta, mode=result.cell.mode, params=result.params)
            solved[key] = analyze(config)
        stationary = solved[key]
        baselines.append(
            EgtBaseline(
                cell=result.cell,
                Z=Z,
                beta=beta,
                distribution=stationary.by_code(),
                marginals=RoleShares(**stationary.marginals()),
            )
        )
    logger.debug("Solved %d chains for %d cells", len(solved), len(results))
    return baselines

"""Personality ablation: one agent's personality at a time, plus a control."""

import logging

from trustgame.agents.personalities import personalities_for
from trustgame.experiments.runner import ExperimentRun, run_cells
from trustgame.models.experiment import ExperimentConfig, PersonalityTreatment
from trustgame.models.game import ROLES, TrustMode

logger = logging.getLogger(__name__)


def ablation_treatments() -> list[PersonalityTreatment]:
    """Control followed by the six single-personality treatments."""
    return [PersonalityTreatment()] + [
        PersonalityTreatment(role=role, personality=personality)
        for role in ROLES
        for personality in personalities_for(role)
    ]


def ablation_config(config: ExperimentConfig, *, override: bool = False) -> ExperimentConfig:
    """Ablation variant of a configuration.

    Without ``override`` the sweep is restricted to one-shot conditional-trust games
    with epsilon = -0.1 and c_R = 0.5; the b_fo list is kept.
    """
    update = {"treatments": ablation_treatments()}
    if not override:
        update |= {
            "rounds": 1,
            "modes": [TrustMode.CONDITIONAL],
            "epsilon": [-0.1],
            "c_R": [0.5],
        }
    return config.model_copy(update=update)


async def run_personality_ablation(
    config: ExperimentConfig, *, override: bool = False, **kwargs
) -> ExperimentRun:
    """Run the seven ablation treatments. Keyword arguments go to ``run_cells``."""
    ablation = ablation_config(config, override=override)
    logger.info("Personality ablation over %d cells", len(ablation.cells()))
    return await run_cells(ablation, ablation.cells(), **kwargs)

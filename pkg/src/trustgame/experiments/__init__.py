"""Experiment sweeps, aggregation and personality ablation."""

from trustgame.experiments.ablation import ablation_treatments, run_personality_ablation
from trustgame.experiments.aggregate import aggregate_rounds, aggregate_transcripts
from trustgame.experiments.compare import egt_baselines
from trustgame.experiments.config import load_config
from trustgame.experiments.runner import ExperimentRun, replay, run_experiment

__all__ = [
    "ExperimentRun",
    "ablation_treatments",
    "aggregate_rounds",
    "aggregate_transcripts",
    "egt_baselines",
    "load_config",
    "replay",
    "run_experiment",
    "run_personality_ablation",
]

"""Experiment configuration documents (YAML)."""

import logging
from pathlib import Path

import yaml
from pydantic import ValidationError

from trustgame.exceptions import ConfigError
from trustgame.models.experiment import ExperimentConfig

logger = logging.getLogger(__name__)


def load_config(path: Path) -> ExperimentConfig:
    """Load and validate an experiment configuration.

    Raises:
        ConfigError: If the file is unreadable, not YAML, or fails validation
            (unknown keys included).
    """
    try:
        document = yaml.safe_load(Path(path).read_text())
    except OSError as e:
        raise ConfigError(f"Cannot read experiment config {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"Experiment config {path} is not valid YAML: {e}") from e

    if not isinstance(document, dict):
        raise ConfigError(f"Experiment config {path} must be a mapping")

    try:
        config = ExperimentConfig.model_validate(document)
    except ValidationError as e:
        raise ConfigError(f"Invalid experiment config {path}:\n{e}") from e

    logger.debug("Loaded %s: %d cells", path, len(config.cells()))
    return config


def dump_config(config: ExperimentConfig) -> str:
    """YAML text of a configuration, as stored next to its outputs."""
    return yaml.safe_dump(config.model_dump(mode="json", exclude_none=True), sort_keys=False)

"""Shared test fixtures."""

import pytest

from trustgame.agents.backends import build_registry
from trustgame.models.experiment import ExperimentConfig
from trustgame.models.game import GameParams, TrustMode
from trustgame.models.harness import BackendConfig, BackendKind, GameSpec
from trustgame.settings import get_settings
from trustgame.workflows.state import Severity


@pytest.fixture(autouse=True)
def _fresh_settings(monkeypatch, tmp_path):
    """Settings never leak between tests or pick up a developer's .env."""
    monkeypatch.chdir(tmp_path)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def default_params() -> GameParams:
    """Reference parameters used across experiments."""
    return GameParams()


@pytest.fixture
def fixed_backend():
    """Factory for fixed-action backends playing profile codes in order."""

    def factory(*script: str) -> BackendConfig:
        return BackendConfig(kind=BackendKind.FIXED_ACTION, script=list(script))

    return factory


@pytest.fixture
def scripted_backend():
    """Factory for seeded stochastic backends."""

    def factory(seed: int = 7, **cooperation: float) -> BackendConfig:
        return BackendConfig(kind=BackendKind.SCRIPTED, seed=seed, cooperation=cooperation)

    return factory


@pytest.fixture
def fixed_registry(fixed_backend):
    """Factory for registries holding one fixed-action backend."""

    def factory(*script: str):
        return build_registry({"default": fixed_backend(*script)})

    return factory


@pytest.fixture
def one_shot_spec() -> GameSpec:
    """One-shot unconditional game at default params."""
    return GameSpec(mode=TrustMode.UNCONDITIONAL, rounds=1)


@pytest.fixture
def small_config(tmp_path, scripted_backend) -> ExperimentConfig:
    """Two-cell scripted sweep writing into tmp_path."""
    return ExperimentConfig(
        modes=[TrustMode.CONDITIONAL],
        epsilon=[-0.1],
        c_R=[0.5],
        b_fo=[0.0, 2.0],
        replications=4,
        backend=scripted_backend(seed=11),
        output_dir=tmp_path / "runs",
        seed=3,
        parallelism=2,
    )


@pytest.fixture
def progress_messages() -> list[tuple[Severity, str]]:
    """Collects progress callback messages."""
    return []


@pytest.fixture
def on_progress(progress_messages):
    """Progress callback that records into progress_messages."""

    def callback(severity: Severity, message: str) -> None:
        progress_messages.append((severity, message))

    return callback

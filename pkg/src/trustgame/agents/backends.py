"""Reply backends: chat-completion HTTP, seeded scripted, and fixed action scripts."""

import asyncio
import logging
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Protocol

import backoff
import numpy as np

from trustgame.agents import player
from trustgame.exceptions import BackendError, BackendExhaustedError, TrustgameError
from trustgame.models.game import (
    ROLES,
    Action,
    ActionProfile,
    Role,
    TrustMode,
    action_label,
    role_actions,
)
from trustgame.models.harness import BackendConfig, BackendKind
from trustgame.settings import create_chat_model

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CompletionRequest:
    """One prompt sent to a backend for one agent."""

    role: Role
    prompt: str
    mode: TrustMode
    round_index: int
    total_rounds: int
    attempt: int = 0
    game_seed: int = 0
    replicate: int = 0


class Backend(Protocol):
    """Anything that turns a prompt into a raw reply."""

    config: BackendConfig

    async def complete(self, request: CompletionRequest) -> str: ...


class RateLimiter:
    """Spaces request admission to at most ``rpm`` requests per minute."""

    def __init__(self, rpm: float | None) -> None:
        self.interval = 60.0 / rpm if rpm else 0.0
        self._lock = asyncio.Lock()
        self._next_slot = 0.0

    async def acquire(self) -> None:
        if not self.interval:
            return
        async with self._lock:
            loop = asyncio.get_running_loop()
            wait = self._next_slot - loop.time()
            if wait > 0:
                await asyncio.sleep(wait)
            self._next_slot = max(loop.time(), self._next_slot) + self.interval


def _answer(role: Role, action: Action, mode: TrustMode) -> str:
    return f"ANSWER: {action_label(role, action, mode)}"


class FixedActionBackend:
    """Plays a script of profile codes, one entry per round, cycling across replicates."""

    def __init__(self, config: BackendConfig) -> None:
        self.config = config
        self._profiles = [ActionProfile.from_code(code) for code in config.script]

    async def complete(self, request: CompletionRequest) -> str:
        step = request.replicate * request.total_rounds + request.round_index - 1
        profile = self._profiles[step % len(self._profiles)]
        return _answer(request.role, profile.action(request.role), request.mode)


class ScriptedBackend:
    """Seeded stochastic replies.

    Every reply draws from its own generator keyed by (backend seed, game seed,
    replicate, round, role, attempt), so the order in which agents are queried never
    changes the outcome.
    """

    def __init__(self, config: BackendConfig) -> None:
        self.config = config

    async def complete(self, request: CompletionRequest) -> str:
        key = [
            self.config.seed,
            request.game_seed,
            request.replicate,
            request.round_index,
            ROLES.index(request.role),
            request.attempt,
        ]
        rng = np.random.default_rng(key)
        cooperative, other = role_actions(request.role)
        p = self.config.cooperation.get(request.role, 0.5)
        action = cooperative if rng.random() < p else other
        reasoning = "I compare the outcomes listed above.\n"
        return reasoning + _answer(request.role, action, request.mode)


class ChatCompletionBackend:
    """OpenAI-compatible chat-completion backend driven through the player agent."""

    def __init__(self, config: BackendConfig, limiter: RateLimiter | None = None) -> None:
        self.config = config
        self.limiter = limiter or RateLimiter(config.rate_limit_rpm)
        self._model = None

    def _chat_model(self):
        if self._model is None:
            self._model = create_chat_model(self.config)
        return self._model

    async def complete(self, request: CompletionRequest) -> str:
        model = self._chat_model()
        model_settings = {"temperature": self.config.temperature, "timeout": self.config.timeout}

        @backoff.on_exception(
            backoff.expo,
            Exception,
            max_tries=self.config.max_retries + 1,
            factor=self.config.backoff_factor,
            jitter=None,
            giveup=lambda e: isinstance(e, TrustgameError),
            logger=logger,
        )
        async def _call() -> str:
            await self.limiter.acquire()
            result = await player.agent.run(
                request.prompt, model=model, model_settings=model_settings
            )
            return result.output

        try:
            return await _call()
        except TrustgameError:
            raise
        except Exception as e:
            raise BackendExhaustedError(
                f"{self.config.model} failed after {self.config.max_retries + 1} attempts: {e}"
            ) from e


def build_backend(config: BackendConfig) -> Backend:
    """Instantiate the backend for a configuration."""
    match config.kind:
        case BackendKind.CHAT_COMPLETION_HTTP:
            return ChatCompletionBackend(config)
        case BackendKind.SCRIPTED:
            return ScriptedBackend(config)
        case BackendKind.FIXED_ACTION:
            return FixedActionBackend(config)
    raise BackendError(f"Unknown backend kind: {config.kind}")


def build_registry(configs: Mapping[str, BackendConfig]) -> dict[str, Backend]:
    """One backend instance per id; games sharing an id share its rate limiter."""
    return {backend_id: build_backend(config) for backend_id, config in configs.items()}

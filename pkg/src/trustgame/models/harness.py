"""Pydantic models for LLM-agent games and their transcripts."""

from enum import StrEnum
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from trustgame.agents.personalities import PERSONALITY_ROLES, Personality
from trustgame.models.game import (
    ROLES,
    ActionProfile,
    GameParams,
    PayoffTriple,
    Role,
    TrustMode,
    format_float,
)

TRANSCRIPT_SCHEMA_VERSION = 1


class BackendKind(StrEnum):
    """How agent replies are produced."""

    CHAT_COMPLETION_HTTP = "chat-completion-http"
    SCRIPTED = "scripted"
    FIXED_ACTION = "fixed-action"


class BackendConfig(BaseModel):
    """One reply backend, shared by all three agents of a game."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: BackendKind
    model: str | None = Field(default=None, description="Model id for HTTP backends: gpt-4o")
    base_url: str | None = Field(default=None, description="Endpoint base for gateways")
    api_key_env: str = Field(default="OPENAI_API_KEY", description="Credential env var name")
    temperature: float = Field(default=1.0, ge=0)
    timeout: float = Field(default=60.0, gt=0, description="Request timeout in seconds")
    max_retries: int = Field(default=3, ge=0, description="HTTP retries after the first try")
    backoff_factor: float = Field(default=1.0, ge=0, description="Exponential backoff base")
    rate_limit_rpm: float | None = Field(default=60.0, gt=0, description="Requests per minute")
    seed: int | None = Field(default=None, ge=0, description="Seed for scripted replies")
    cooperation: dict[Role, float] = Field(
        default_factory=dict,
        description="Scripted: probability of the cooperative action per role (default 0.5)",
    )
    script: list[str] = Field(
        default_factory=list,
        description="Fixed-action: profile codes played in order (TCC, NDD, ...), cycled",
    )

    @field_validator("cooperation")
    @classmethod
    def _check_probabilities(cls, value: dict[Role, float]) -> dict[Role, float]:
        for role, prob in value.items():
            if not 0.0 <= prob <= 1.0:
                raise ValueError(f"cooperation probability for {role} must be in [0, 1]")
        return value

    @field_validator("script")
    @classmethod
    def _check_script(cls, value: list[str]) -> list[str]:
        for code in value:
            ActionProfile.from_code(code)
        return value

    @model_validator(mode="after")
    def _check_kind_requirements(self) -> "BackendConfig":
        if self.kind is BackendKind.CHAT_COMPLETION_HTTP and not self.model:
            raise ValueError("chat-completion-http backends need a model id")
        if self.kind is BackendKind.SCRIPTED and self.seed is None:
            raise ValueError("scripted backends need a seed")
        if self.kind is BackendKind.FIXED_ACTION and not self.script:
            raise ValueError("fixed-action backends need an action script")
        return self

    @classmethod
    def preset(cls, name: str, **overrides) -> "BackendConfig":
        """HTTP backend preset: 'openai' (GPT-4o) or 'mistral' (Mistral Large)."""
        presets = {
            "openai": {"model": "gpt-4o", "api_key_env": "OPENAI_API_KEY"},
            "mistral": {
                "model": "mistral-large-latest",
                "base_url": "https://api.mistral.ai/v1",
                "api_key_env": "MISTRAL_API_KEY",
            },
        }
        if name not in presets:
            raise ValueError(f"Unknown backend preset: {name}")
        return cls(kind=BackendKind.CHAT_COMPLETION_HTTP, **{**presets[name], **overrides})


class AgentSpec(BaseModel):
    """One player: role, optional personality, backend binding."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    role: Role
    personality: Personality | None = None
    backend_id: str = "default"

    @model_validator(mode="after")
    def _check_personality_role(self) -> "AgentSpec":
        if self.personality is not None and PERSONALITY_ROLES[self.personality] is not self.role:
            raise ValueError(f"Personality {self.personality} does not belong to {self.role}")
        return self


def default_agents(backend_id: str = "default") -> list[AgentSpec]:
    """Regulator, developer and user without personalities."""
    return [
        AgentSpec(role=Role.REGULATOR, backend_id=backend_id),
        AgentSpec(role=Role.DEVELOPER, backend_id=backend_id),
        AgentSpec(role=Role.USER, backend_id=backend_id),
    ]


class GameSpec(BaseModel):
    """Everything needed to play one game."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    mode: TrustMode = TrustMode.CONDITIONAL
    params: GameParams = Field(default_factory=GameParams)
    rounds: int = Field(default=1, ge=1)
    agents: list[AgentSpec] = Field(default_factory=default_agents)
    template: Path | None = Field(default=None, description="Prompt template, None = built-in")
    parse_retries: int = Field(default=3, ge=0, description="Re-prompts per agent per round")
    seed: int = Field(default=0, ge=0, description="Game seed handed to scripted backends")
    replicate: int = Field(default=0, ge=0)
    communicate: Literal[False] = False
    reveal_personalities: Literal[False] = False
    stopping_condition: None = None

    @field_validator("agents")
    @classmethod
    def _check_agents(cls, agents: list[AgentSpec]) -> list[AgentSpec]:
        roles = sorted(agent.role for agent in agents)
        if roles != sorted(ROLES):
            raise ValueError("A game needs exactly one user, one developer and one regulator")
        if len({agent.backend_id for agent in agents}) != 1:
            raise ValueError("All agents of a game must share one backend")
        return agents

    @property
    def backend_id(self) -> str:
        """The single backend every agent of this game uses."""
        return self.agents[0].backend_id

    def agent(self, role: Role) -> AgentSpec:
        """Agent playing a role."""
        return next(agent for agent in self.agents if agent.role is role)


class AgentTurn(BaseModel):
    """One agent's decision within a round."""

    role: Role
    prompt: str
    replies: list[str] = Field(default_factory=list, description="Raw replies, one per attempt")
    action: str | None = Field(default=None, description="Parsed action value: trust, comply")
    retries: int = Field(default=0, description="Re-prompts needed after the first attempt")
    error: str | None = None


class RoundRecord(BaseModel):
    """A completed round."""

    round_index: int
    turns: list[AgentTurn]
    profile: ActionProfile
    payoffs: PayoffTriple
    cumulative: PayoffTriple


class CellKey(BaseModel):
    """Identifies one cell of an experiment sweep."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    mode: TrustMode
    epsilon: float
    c_R: float
    b_fo: float
    treatment: str = "control"

    @property
    def slug(self) -> str:
        """Filesystem and id friendly name."""
        treatment = self.treatment.replace(":", "-")
        eps, c_r, b_fo = (format_float(x) for x in (self.epsilon, self.c_R, self.b_fo))
        return f"{self.mode.value}_eps{eps}_cR{c_r}_bfo{b_fo}_{treatment}"

    @property
    def panel(self) -> tuple[TrustMode, float, float, str]:
        """Chart panel this cell belongs to (b_fo is the x axis)."""
        return (self.mode, self.epsilon, self.c_R, self.treatment)


class GameTranscript(BaseModel):
    """Full audit record of one game."""

    schema_version: int = TRANSCRIPT_SCHEMA_VERSION
    game_id: str
    cell: CellKey | None = None
    spec: GameSpec
    backend: BackendConfig
    records: list[RoundRecord] = Field(default_factory=list)
    valid: bool = True
    failure_reason: str | None = None
    pending_turns: list[AgentTurn] = Field(
        default_factory=list, description="Turns of the round that failed, kept for audit"
    )

    @property
    def cumulative(self) -> PayoffTriple:
        """Cumulative payoffs after the last completed round."""
        return self.records[-1].cumulative if self.records else PayoffTriple()

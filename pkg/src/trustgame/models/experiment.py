"""Pydantic models for experiment sweeps and their aggregated results."""

import itertools
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from trustgame.agents.personalities import PERSONALITY_ROLES, Personality
from trustgame.models.game import GameParams, Role, TrustMode
from trustgame.models.harness import AgentSpec, BackendConfig, CellKey

CONTROL = "control"


class PersonalityTreatment(BaseModel):
    """At most one agent's personality; the others stay without one."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    role: Role | None = None
    personality: Personality | None = None

    @model_validator(mode="after")
    def _check_pairing(self) -> "PersonalityTreatment":
        if (self.role is None) != (self.personality is None):
            raise ValueError("A treatment sets both role and personality, or neither")
        if self.personality is not None and PERSONALITY_ROLES[self.personality] is not self.role:
            raise ValueError(f"Personality {self.personality} does not belong to {self.role}")
        return self

    @property
    def name(self) -> str:
        """'control' or 'role:personality'."""
        if self.role is None:
            return CONTROL
        return f"{self.role.value}:{self.personality.value}"

    def apply(self, agents: list[AgentSpec]) -> list[AgentSpec]:
        """Agents with this treatment's personality set on its role."""
        return [
            agent.model_copy(update={"personality": self.personality})
            if agent.role is self.role
            else agent
            for agent in agents
        ]


class ExperimentConfig(BaseModel):
    """A parameter sweep: one cell per mode x epsilon x c_R x b_fo x treatment."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    modes: list[TrustMode] = Field(
        default_factory=lambda: [TrustMode.CONDITIONAL, TrustMode.UNCONDITIONAL], min_length=1
    )
    epsilon: list[float] = Field(default_factory=lambda: [-0.1, 0.2], min_length=1)
    c_R: list[float] = Field(default_factory=lambda: [0.5, 5.0], min_length=1)
    b_fo: list[float] = Field(
        default_factory=lambda: [0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0], min_length=1
    )
    base_params: GameParams = Field(default_factory=GameParams)
    rounds: int = Field(default=1, ge=1, description="1 for one-shot, 10 for repeated games")
    replications: int = Field(default=30, ge=1)
    backend: BackendConfig
    treatments: list[PersonalityTreatment] = Field(
        default_factory=lambda: [PersonalityTreatment()], min_length=1
    )
    template: Path | None = None
    parse_retries: int = Field(default=3, ge=0)
    output_dir: Path | None = Field(default=None, description="Defaults to Settings.output_dir")
    seed: int = Field(default=0, ge=0, description="Master seed for game seeds")
    parallelism: int | None = Field(default=None, ge=1, description="Defaults to Settings")

    @field_validator("modes", "epsilon", "c_R", "b_fo")
    @classmethod
    def _unique_values(cls, value: list) -> list:
        if len(value) != len(set(value)):
            raise ValueError("Sweep values must be unique")
        return value

    @field_validator("treatments")
    @classmethod
    def _unique_treatments(cls, value: list[PersonalityTreatment]) -> list[PersonalityTreatment]:
        names = [t.name for t in value]
        if len(names) != len(set(names)):
            raise ValueError("Treatments must be unique")
        return value

    def cells(self) -> list[CellKey]:
        """Every cell of the sweep in a fixed order."""
        return [
            CellKey(mode=mode, epsilon=eps, c_R=c_R, b_fo=b_fo, treatment=treatment.name)
            for mode, eps, c_R, b_fo, treatment in itertools.product(
                self.modes, self.epsilon, self.c_R, self.b_fo, self.treatments
            )
        ]

    def treatment(self, name: str) -> PersonalityTreatment:
        """Treatment by name."""
        return next(t for t in self.treatments if t.name == name)

    def params_for(self, cell: CellKey) -> GameParams:
        """Game parameters of a cell, validated."""
        values = self.base_params.model_dump()
        values.update(epsilon=cell.epsilon, c_R=cell.c_R, b_fo=cell.b_fo)
        return GameParams(**values)


class RoleShares(BaseModel):
    """Share of the cooperative action per role."""

    trust: float
    developer_comply: float
    regulator_comply: float


class RoundMarginals(RoleShares):
    """Role shares at one round index across valid games."""

    round_index: int


class CellResult(BaseModel):
    """Aggregated outcome of one sweep cell.

    Counts are integers; every frequency is derived from them. Degenerate cells (no
    valid game) carry counts only.
    """

    cell: CellKey
    params: GameParams
    rounds: int
    valid_games: int
    invalid_games: int
    profile_counts: dict[str, int] = Field(description="Profile code -> count over all rounds")
    round_counts: list[dict[str, int]] = Field(description="Per round: profile code -> count")
    profile_frequencies: dict[str, float] | None = None
    per_round_marginals: list[RoundMarginals] | None = None
    role_average: RoleShares | None = None

    @property
    def degenerate(self) -> bool:
        """True when no valid game contributed."""
        return self.valid_games == 0

    @property
    def games(self) -> int:
        return self.valid_games + self.invalid_games

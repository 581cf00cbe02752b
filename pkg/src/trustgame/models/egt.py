"""Pydantic models for the finite-population evolutionary baseline."""

from pydantic import BaseModel, ConfigDict, Field

from trustgame.models.game import ActionProfile, GameParams, TrustMode, is_cooperative


class EgtConfig(BaseModel):
    """Inputs of the small-mutation-limit chain over monomorphic profiles."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    Z: int = Field(default=100, ge=2, description="Population size per role")
    beta: float = Field(default=1.0, ge=0, description="Selection intensity")
    mode: TrustMode = TrustMode.CONDITIONAL
    params: GameParams = Field(default_factory=GameParams)


class StationaryResult(BaseModel):
    """Stationary distribution over the 8 monomorphic profiles."""

    mode: TrustMode
    states: list[ActionProfile]
    probabilities: list[float]
    transition_matrix: list[list[float]]

    @property
    def distribution(self) -> dict[ActionProfile, float]:
        """Probability per profile."""
        return dict(zip(self.states, self.probabilities, strict=True))

    def by_code(self) -> dict[str, float]:
        """Probability per profile code, in state order."""
        return {
            state.code(self.mode): prob
            for state, prob in zip(self.states, self.probabilities, strict=True)
        }

    def marginals(self) -> dict[str, float]:
        """Long-run share of user trust, developer compliance and regulator enforcement."""
        trust = developer = regulator = 0.0
        for state, prob in zip(self.states, self.probabilities, strict=True):
            if is_cooperative(state.user):
                trust += prob
            if is_cooperative(state.developer):
                developer += prob
            if is_cooperative(state.regulator):
                regulator += prob
        return {"trust": trust, "developer_comply": developer, "regulator_comply": regulator}

"""Pydantic models for the three-actor trust game."""

from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field


def format_float(value: float) -> str:
    """Canonical float text (12 significant digits), -0 written as 0."""
    return format(value + 0.0, ".12g")


class TrustMode(StrEnum):
    """How users place their trust.

    CONDITIONAL users see the regulator's public reputation before trusting, so trust
    is withdrawn whenever the regulator is lenient. UNCONDITIONAL users trust on
    expected benefit alone.
    """

    CONDITIONAL = "conditional"
    UNCONDITIONAL = "unconditional"


class Role(StrEnum):
    """The three actors of the game."""

    USER = "user"
    DEVELOPER = "developer"
    REGULATOR = "regulator"


# Profile order: user, developer, regulator
ROLES: tuple[Role, ...] = (Role.USER, Role.DEVELOPER, Role.REGULATOR)


class UserAction(StrEnum):
    """User adopts (trusts) the AI system or not."""

    TRUST = "trust"
    NO_TRUST = "no_trust"


class Conduct(StrEnum):
    """Developer and regulator action: cooperate (comply / enforce) or defect."""

    COMPLY = "comply"
    DEFECT = "defect"


Action = UserAction | Conduct


class GameParams(BaseModel):
    """Payoff parameters. Defaults are the reference setting used across experiments."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    b_U: float = Field(default=4.0, ge=0, description="User benefit from safe AI")
    b_P: float = Field(default=4.0, ge=0, description="Developer benefit from sales")
    b_R: float = Field(default=4.0, ge=0, description="Regulator benefit from adoption")
    c_P: float = Field(default=0.5, ge=0, description="Developer compliance cost")
    c_R: float = Field(default=0.5, ge=0, description="Regulation cost")
    u: float = Field(default=1.5, ge=0, description="Punishment loss of a caught defector")
    v: float = Field(default=0.5, ge=0, description="Cost of administering punishment")
    b_fo: float = Field(default=2.0, ge=0, description="Reward for catching a defector")
    epsilon: float = Field(default=-0.1, le=1, description="Risk factor on b_U for unsafe AI")

    def scaled(self, factor: float) -> "GameParams":
        """Scale every monetary field by a positive factor (epsilon is dimensionless)."""
        monetary = ("b_U", "b_P", "b_R", "c_P", "c_R", "u", "v", "b_fo")
        values = self.model_dump()
        values.update({name: values[name] * factor for name in monetary})
        return GameParams(**values)


class ActionProfile(BaseModel):
    """One joint action of user, developer and regulator."""

    model_config = ConfigDict(frozen=True)

    user: UserAction
    developer: Conduct
    regulator: Conduct

    def action(self, role: Role) -> Action:
        """Action played by a role."""
        return getattr(self, role.value)

    def with_action(self, role: Role, action: Action) -> "ActionProfile":
        """Copy of this profile with one role's action replaced."""
        return self.model_copy(update={role.value: action})

    def code(self, mode: TrustMode) -> str:
        """Compact code such as CTCC (conditional) or TDD (unconditional)."""
        return (
            action_label(Role.USER, self.user, mode)
            + action_label(Role.DEVELOPER, self.developer, mode)
            + action_label(Role.REGULATOR, self.regulator, mode)
        )

    @classmethod
    def from_code(cls, code: str) -> "ActionProfile":
        """Parse a profile code. Both T and CT are accepted for a trusting user."""
        text = code.strip().upper()
        if len(text) < 3:
            raise ValueError(f"Invalid profile code: {code!r}")
        user_part, developer, regulator = text[:-2], text[-2], text[-1]
        users = {"T": UserAction.TRUST, "CT": UserAction.TRUST, "N": UserAction.NO_TRUST}
        conducts = {"C": Conduct.COMPLY, "D": Conduct.DEFECT}
        if user_part not in users or developer not in conducts or regulator not in conducts:
            raise ValueError(f"Invalid profile code: {code!r}")
        return cls(
            user=users[user_part],
            developer=conducts[developer],
            regulator=conducts[regulator],
        )


def action_label(role: Role, action: Action, mode: TrustMode) -> str:
    """Short label of an action as shown to agents and in tables."""
    if role is Role.USER:
        if action == UserAction.TRUST:
            return "CT" if mode is TrustMode.CONDITIONAL else "T"
        return "N"
    return "C" if action == Conduct.COMPLY else "D"


def role_actions(role: Role) -> tuple[Action, Action]:
    """Binary action set of a role, cooperative action first."""
    if role is Role.USER:
        return (UserAction.TRUST, UserAction.NO_TRUST)
    return (Conduct.COMPLY, Conduct.DEFECT)


def is_cooperative(action: Action) -> bool:
    """Trust for users, compliance for developers and regulators."""
    return action in (UserAction.TRUST, Conduct.COMPLY)


class PayoffTriple(BaseModel):
    """Payoffs of one round, one value per role."""

    model_config = ConfigDict(frozen=True)

    user: float = 0.0
    developer: float = 0.0
    regulator: float = 0.0

    def for_role(self, role: Role) -> float:
        """Payoff of a single role."""
        return getattr(self, role.value)

    def __add__(self, other: "PayoffTriple") -> "PayoffTriple":
        return PayoffTriple(
            user=self.user + other.user,
            developer=self.developer + other.developer,
            regulator=self.regulator + other.regulator,
        )

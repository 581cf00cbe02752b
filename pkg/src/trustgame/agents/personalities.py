"""Personality traits that can be given to a single agent."""

from enum import StrEnum

from trustgame.models.game import Role


class Personality(StrEnum):
    """The six traits, two contrasting ones per role."""

    RISK_AVERSE = "risk-averse"
    RISK_TAKING = "risk-taking"
    AGGRESSIVE = "aggressive"
    COOPERATIVE = "cooperative"
    LENIENT = "lenient"
    STRICT = "strict"


PERSONALITY_ROLES: dict[Personality, Role] = {
    Personality.RISK_AVERSE: Role.USER,
    Personality.RISK_TAKING: Role.USER,
    Personality.AGGRESSIVE: Role.DEVELOPER,
    Personality.COOPERATIVE: Role.DEVELOPER,
    Personality.LENIENT: Role.REGULATOR,
    Personality.STRICT: Role.REGULATOR,
}

# Canonical trait text injected into the owning agent's prompt
PERSONALITY_TRAITS: dict[Personality, str] = {
    Personality.RISK_AVERSE: "you reject new AI systems to avoid uncertainty",
    Personality.RISK_TAKING: "you adopt new AI systems to benefit from potential advancements",
    Personality.AGGRESSIVE: "you develop quickly to stay ahead, accepting some risks",
    Personality.COOPERATIVE: "you take a cautious approach to minimize risk",
    Personality.LENIENT: "you trust developers to regulate themselves",
    Personality.STRICT: "you require verification before deployment to ensure safety",
}


def describe(personality: Personality) -> str:
    """Full personality sentence, e.g. 'aggressive, i.e. you develop quickly ...'."""
    return f"{personality.value}, i.e. {PERSONALITY_TRAITS[personality]}"


def personalities_for(role: Role) -> list[Personality]:
    """Traits available to a role."""
    return [p for p, owner in PERSONALITY_ROLES.items() if owner is role]

"""Pure-strategy Nash equilibria by brute-force deviation checks."""

import math

from trustgame.game.payoffs import enumerate_profiles, payoff
from trustgame.models.game import (
    ROLES,
    ActionProfile,
    GameParams,
    Role,
    TrustMode,
    role_actions,
)

TIE_REL_TOL = 1e-9
TIE_ABS_TOL = 1e-12


def unilateral_deviations(profile: ActionProfile) -> list[tuple[Role, ActionProfile]]:
    """The three profiles reachable by changing exactly one role's action."""
    deviations = []
    for role in ROLES:
        current = profile.action(role)
        other = next(a for a in role_actions(role) if a != current)
        deviations.append((role, profile.with_action(role, other)))
    return deviations


def is_pure_nash(
    profile: ActionProfile,
    params: GameParams,
    mode: TrustMode,
    strict: bool = False,
) -> bool:
    """Check one profile against all unilateral deviations.

    Weak: a deviation disqualifies only if it pays strictly more.
    Strict: a deviation that pays the same also disqualifies.
    Payoffs within floating-point noise of each other count as equal.
    """
    base = payoff(profile, params, mode)
    for role, deviant in unilateral_deviations(profile):
        current = base.for_role(role)
        alternative = payoff(deviant, params, mode).for_role(role)
        tied = math.isclose(alternative, current, rel_tol=TIE_REL_TOL, abs_tol=TIE_ABS_TOL)
        if (strict and tied) or (not tied and alternative > current):
            return False
    return True


def find_pure_nash(
    params: GameParams,
    mode: TrustMode,
    strict: bool = False,
) -> set[ActionProfile]:
    """All pure-strategy Nash equilibria of the one-shot game."""
    return {
        profile
        for profile in enumerate_profiles(mode)
        if is_pure_nash(profile, params, mode, strict=strict)
    }

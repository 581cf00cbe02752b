"""Payoff tables of the governance game, with and without conditional trust.

Payoffs are plain floats. Every expression below is evaluated in the same order as the
table it encodes (e.g. ``b_R - c_R - v + b_fo``), so results for the small decimal
parameters used in experiments compare exactly.
"""

from itertools import product

from trustgame.models.game import (
    ActionProfile,
    Conduct,
    GameParams,
    PayoffTriple,
    TrustMode,
    UserAction,
)


def enumerate_profiles(mode: TrustMode) -> list[ActionProfile]:
    """All 8 profiles in table order.

    User-major, then developer, then regulator, cooperative action first:
    TCC, TCD, TDC, TDD, NCC, NCD, NDC, NDD (CT in place of T for conditional trust).
    The profile set is the same in both modes, only the user's trust label differs.
    """
    return [
        ActionProfile(user=user, developer=developer, regulator=regulator)
        for user, developer, regulator in product(
            (UserAction.TRUST, UserAction.NO_TRUST),
            (Conduct.COMPLY, Conduct.DEFECT),
            (Conduct.COMPLY, Conduct.DEFECT),
        )
    ]


def payoff(profile: ActionProfile, params: GameParams, mode: TrustMode) -> PayoffTriple:
    """Payoffs of one joint action."""
    p = params
    developer_complies = profile.developer is Conduct.COMPLY
    regulator_enforces = profile.regulator is Conduct.COMPLY

    # No adoption: nobody earns a benefit, costs are still paid
    if profile.user is UserAction.NO_TRUST:
        return PayoffTriple(
            user=0.0,
            developer=0.0 - p.c_P if developer_complies else 0.0,
            regulator=0.0 - p.c_R if regulator_enforces else 0.0,
        )

    # Conditional trust is withdrawn when the regulator's reputation is bad
    if mode is TrustMode.CONDITIONAL and not regulator_enforces:
        return PayoffTriple(
            user=0.0,
            developer=0.0 - p.c_P if developer_complies else 0.0,
            regulator=0.0,
        )

    if developer_complies:
        user = p.b_U
        developer = p.b_P - p.c_P
        regulator = p.b_R - p.c_R if regulator_enforces else p.b_R
    else:
        user = p.epsilon * p.b_U
        developer = p.b_P - p.u if regulator_enforces else p.b_P
        regulator = p.b_R - p.c_R - p.v + p.b_fo if regulator_enforces else p.b_R

    return PayoffTriple(user=user, developer=developer, regulator=regulator)


def payoff_table(params: GameParams, mode: TrustMode) -> list[tuple[ActionProfile, PayoffTriple]]:
    """Every profile with its payoffs, in table order."""
    return [(profile, payoff(profile, params, mode)) for profile in enumerate_profiles(mode)]

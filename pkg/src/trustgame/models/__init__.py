"""Pydantic models for trustgame."""

from trustgame.models.game import (
    ROLES,
    ActionProfile,
    Conduct,
    GameParams,
    PayoffTriple,
    Role,
    TrustMode,
    UserAction,
)

__all__ = [
    "ROLES",
    "ActionProfile",
    "Conduct",
    "GameParams",
    "PayoffTriple",
    "Role",
    "TrustMode",
    "UserAction",
]

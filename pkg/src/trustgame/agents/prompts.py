"""Prompt template rendering.

Templates are plain text with ``{{ placeholder }}`` syntax (Jinja2). The placeholder
catalog is closed:

- ``role``: the agent's role (user, developer, regulator)
- ``personality``: own personality sentence, empty when none is set
- ``trust_label``: CT under conditional trust, T otherwise
- ``reputation_notice``: conditional-trust notice, only for the user
- ``outcomes``: one sentence per joint outcome with its payoffs
- ``actions``: own options, each with ``label`` and ``meaning``
- ``answer_labels``: the labels the answer line may contain
- ``round_index`` / ``total_rounds``: 1-based round counter
- ``history``: one line per earlier round, empty in round 1
"""

import logging
from collections.abc import Sequence
from importlib import resources
from pathlib import Path

from jinja2 import Environment, StrictUndefined, TemplateSyntaxError, UndefinedError, meta

from trustgame.agents.personalities import describe
from trustgame.exceptions import PromptTemplateError
from trustgame.game.payoffs import payoff_table
from trustgame.models.game import ROLES, Role, TrustMode, UserAction, action_label, role_actions
from trustgame.models.harness import AgentSpec, GameSpec, RoundRecord

logger = logging.getLogger(__name__)

PLACEHOLDERS = frozenset(
    {
        "role",
        "personality",
        "trust_label",
        "reputation_notice",
        "outcomes",
        "actions",
        "answer_labels",
        "round_index",
        "total_rounds",
        "history",
    }
)

REPUTATION_NOTICE = (
    "The regulator's reputation is publicly known before you choose. Choosing CT means "
    "you trust conditionally: you adopt the AI system only if the regulator enforces "
    "regulation. If the regulator does not enforce, you do not adopt and nobody earns "
    "anything from adoption."
)

_ACTION_MEANINGS: dict[Role, dict[str, str]] = {
    Role.USER: {
        "trust": "trust the AI system and adopt it",
        "no_trust": "do not trust the AI system and do not adopt it",
    },
    Role.DEVELOPER: {
        "comply": "comply with regulation and develop safe AI, paying the compliance cost",
        "defect": "defect and develop unsafe AI, avoiding the compliance cost",
    },
    Role.REGULATOR: {
        "comply": "enforce regulation, paying its cost and punishing developers who defect",
        "defect": "do not enforce regulation",
    },
}

_ENV = Environment(
    undefined=StrictUndefined,
    trim_blocks=True,
    lstrip_blocks=True,
    autoescape=False,
)


def load_template(path: Path | None = None) -> str:
    """Read a prompt template, the built-in one when ``path`` is None."""
    if path is None:
        return resources.files("trustgame.agents").joinpath("templates/default.txt").read_text()
    try:
        return Path(path).read_text()
    except OSError as e:
        raise PromptTemplateError(f"Cannot read prompt template {path}: {e}") from e


def _number(value: float) -> str:
    return format(value + 0.0, ".10g")


def _outcome_lines(spec: GameSpec) -> list[str]:
    lines = []
    for profile, payoffs in payoff_table(spec.params, spec.mode):
        labels = ", ".join(
            action_label(role, profile.action(role), spec.mode) for role in ROLES
        )
        lines.append(
            f"{labels}: user gets {_number(payoffs.user)}, "
            f"developer gets {_number(payoffs.developer)}, "
            f"regulator gets {_number(payoffs.regulator)}"
        )
    return lines


def history_lines(history: Sequence[RoundRecord], role: Role, mode: TrustMode) -> list[str]:
    """One line per earlier round: everyone's action and the agent's own payoff."""
    lines = []
    for record in history:
        choices = ", ".join(
            f"{r.value} chose {action_label(r, record.profile.action(r), mode)}" for r in ROLES
        )
        own = _number(record.payoffs.for_role(role))
        lines.append(f"Round {record.round_index}: {choices}; your payoff was {own}")
    return lines


def _context(agent: AgentSpec, spec: GameSpec, history: Sequence[RoundRecord]) -> dict:
    role = agent.role
    labels = [action_label(role, action, spec.mode) for action in role_actions(role)]
    conditional_user = role is Role.USER and spec.mode is TrustMode.CONDITIONAL
    return {
        "role": role.value,
        "personality": describe(agent.personality) if agent.personality else "",
        "trust_label": action_label(Role.USER, UserAction.TRUST, spec.mode),
        "reputation_notice": REPUTATION_NOTICE if conditional_user else "",
        "outcomes": _outcome_lines(spec),
        "actions": [
            {"label": label, "meaning": _ACTION_MEANINGS[role][action.value]}
            for label, action in zip(labels, role_actions(role), strict=True)
        ],
        "answer_labels": " or ".join(labels),
        "round_index": len(history) + 1,
        "total_rounds": spec.rounds,
        "history": history_lines(history, role, spec.mode),
    }


def render_prompt(
    template: str,
    agent: AgentSpec,
    spec: GameSpec,
    history: Sequence[RoundRecord] = (),
) -> str:
    """Render one agent's prompt for the next round.

    Only the agent's own personality is rendered; the other agents' personalities
    never reach the context.

    Raises:
        PromptTemplateError: Unknown placeholder, missing field, syntax error or
            unresolved delimiters in the output.
    """
    try:
        parsed = _ENV.parse(template)
    except TemplateSyntaxError as e:
        raise PromptTemplateError(f"Prompt template syntax error: {e}") from e

    unknown = meta.find_undeclared_variables(parsed) - PLACEHOLDERS
    if unknown:
        names = ", ".join(sorted(unknown))
        raise PromptTemplateError(f"Unknown placeholder(s) in prompt template: {names}")

    try:
        text = _ENV.from_string(template).render(**_context(agent, spec, history))
    except UndefinedError as e:
        raise PromptTemplateError(f"Missing field in prompt template: {e.message}") from e

    if "{{" in text or "}}" in text:
        raise PromptTemplateError("Rendered prompt still contains placeholder delimiters")
    return text


def render_game_prompts(
    spec: GameSpec,
    template: str,
    history: Sequence[RoundRecord] = (),
) -> dict[Role, str]:
    """Prompts of all three agents for the next round, without contacting any backend."""
    return {agent.role: render_prompt(template, agent, spec, history) for agent in spec.agents}


def retry_reminder(role: Role, mode: TrustMode) -> str:
    """Format reminder appended to the prompt after an unreadable reply."""
    labels = " or ".join(action_label(role, action, mode) for action in role_actions(role))
    return (
        "\n\nYour previous reply could not be read. End your reply with exactly one line "
        f"of the form ANSWER: <label>, where <label> is {labels}."
    )

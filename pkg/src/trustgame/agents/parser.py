"""Extract a single action from a free-text backend reply."""

import re

from trustgame.exceptions import ParseAmbiguousError, ParseEmptyError
from trustgame.models.game import Action, Conduct, Role, UserAction

ANSWER_MARKER = re.compile(r"ANSWER\s*:", re.IGNORECASE)

# Word boundaries: no letter, digit, underscore or apostrophe on either side ("don't" is one word)
_LEFT = r"(?<![\w'])"
_RIGHT = r"(?![\w'])"

_NOT = r"(?:do\s+not|don't|dont|not|never|no)\s+"

_CONDUCT_WORDS: list[tuple[str, Conduct]] = [
    (_NOT + r"compl(?:y|ying)", Conduct.DEFECT),
    (_NOT + r"defect(?:ing)?", Conduct.COMPLY),
    (r"compl(?:y|ying|ies|iance|iant)", Conduct.COMPLY),
    (r"defect(?:s|ing|ion)?", Conduct.DEFECT),
]

# Ordered so negated phrases claim their span before the bare verb does.
_PATTERNS: dict[Role, list[tuple[str, Action]]] = {
    Role.USER: [
        (_NOT + r"(?:dis|mis)trust(?:ing)?", UserAction.TRUST),
        (_NOT + r"trust(?:ing)?", UserAction.NO_TRUST),
        (r"no[_-]trust|distrust|mistrust", UserAction.NO_TRUST),
        (r"trust(?:s|ing)?", UserAction.TRUST),
        (r"CT|T", UserAction.TRUST),
        (r"N", UserAction.NO_TRUST),
    ],
    Role.DEVELOPER: [
        *_CONDUCT_WORDS,
        (r"C", Conduct.COMPLY),
        (r"D", Conduct.DEFECT),
    ],
    Role.REGULATOR: [
        (_NOT + r"enforc(?:e|ing)", Conduct.DEFECT),
        (_NOT + r"(?:be\s+)?lenien(?:t|cy)", Conduct.COMPLY),
        *_CONDUCT_WORDS,
        (r"enforc(?:e|es|ing|ement)", Conduct.COMPLY),
        (r"lenien(?:t|cy)", Conduct.DEFECT),
        (r"C", Conduct.COMPLY),
        (r"D", Conduct.DEFECT),
    ],
}

_COMPILED: dict[Role, list[tuple[re.Pattern[str], Action]]] = {
    role: [(re.compile(_LEFT + f"(?:{p})" + _RIGHT, re.IGNORECASE), a) for p, a in patterns]
    for role, patterns in _PATTERNS.items()
}


def _scan(text: str, role: Role) -> set[Action]:
    """Actions named in ``text``; each match masks its span for later patterns."""
    found: set[Action] = set()
    for pattern, action in _COMPILED[role]:
        for match in pattern.finditer(text):
            found.add(action)
            start, end = match.span()
            text = text[:start] + " " * (end - start) + text[end:]
    return found


def parse_action(raw_reply: str, role: Role) -> Action:
    """Parse one action for ``role`` from a reply.

    The last ``ANSWER:`` line wins when it names exactly one action. Otherwise the whole
    reply is searched for labels and their full-word synonyms.

    Raises:
        ParseAmbiguousError: Both of the role's actions are named.
        ParseEmptyError: Neither action is named.
    """
    markers = list(ANSWER_MARKER.finditer(raw_reply))
    if markers:
        answer = raw_reply[markers[-1].end() :].splitlines()
        found = _scan(answer[0], role) if answer else set()
        if len(found) == 1:
            return found.pop()

    found = _scan(raw_reply, role)
    if len(found) > 1:
        raise ParseAmbiguousError(f"Reply names both {role} actions", raw_reply)
    if not found:
        raise ParseEmptyError(f"Reply names no {role} action", raw_reply)
    return found.pop()

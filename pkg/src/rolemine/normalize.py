"""Role-string cleaning: raw bracketed role text -> zero or more normalized roles.

A normalized role is lower-cased, whitespace-collapsed, free of parentheses
and "/" characters, carries no leading ordinal marker, and re-normalizes to
itself. Roles marked "n/a" and self-references (himself, herself, themselves)
are dropped entirely.
"""

from __future__ import annotations

import re

_WS = re.compile(r"\s+")

# Multiple-similar-role markers: 1st..5th / first..fifth, only when a
# separate leading word ("1st man" yes, "1stman" no).
_ORDINAL_PREFIX = re.compile(
    r"^(?:1st|2nd|3rd|4th|5th|first|second|third|fourth|fifth)\s+"
)

_SELF_ROLES = frozenset({"himself", "herself", "themselves"})
_DROPPED = _SELF_ROLES | {"n/a"}


def is_self_role(raw: str) -> bool:
    """True iff the trimmed, lower-cased text is exactly a self-reference.

    Compounds like "himself - host" carry role content and are kept.
    """
    return raw.strip().lower() in _SELF_ROLES


def _strip_parentheticals(text: str) -> str:
    """Drop every parenthesized span, greedily matching nested pairs.

    An unmatched "(" removes through end of string; stray ")" characters are
    dropped so outputs never contain parentheses.
    """
    out: list[str] = []
    depth = 0
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            if depth > 0:
                depth -= 1
        elif depth == 0:
            out.append(ch)
    return "".join(out)


def _collapse(text: str) -> str:
    return _WS.sub(" ", text).strip()


def clean_role(raw: str) -> list[str]:
    """Map one raw role string to its list of normalized roles.

    Cleaning order: filter n/a and self-references, remove parenthesized
    text (this also consumes "(1)" / "(#1)" style suffixes), split
    multi-role strings on "/", then per fragment lower-case, collapse
    whitespace and strip leading ordinal markers. Fragments that come out
    empty or filtered are dropped. Total: never raises.
    """
    if _collapse(raw).lower() in _DROPPED:
        return []
    text = _strip_parentheticals(raw)
    if _collapse(text).lower() in _DROPPED:
        return []
    roles: list[str] = []
    for fragment in text.split("/"):
        fragment = _collapse(fragment).lower()
        while True:
            stripped = _ORDINAL_PREFIX.sub("", fragment)
            if stripped == fragment:
                break
            fragment = stripped
        if fragment and fragment not in _DROPPED:
            roles.append(fragment)
    return roles

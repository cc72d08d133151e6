"""Dictionary-and-rule lemmatizer.

Reduction order: irregular-forms exception tables (nouns then verbs), then
base-form membership (base forms are fixpoints), then morphological
detachment rules whose candidates must validate against the bundled
base-form list. Unresolvable tokens pass through unchanged, so unseen
vocabulary is never mangled.

No part-of-speech tagging: noun rules are tried before verb rules, which
suits keyword-like noun phrases. The three data files under ``data/`` are
plain word-per-line (or ``inflected base`` pair-per-line) UTF-8 text and can
be extended without code changes.
"""
from __future__ import annotations

from functools import lru_cache
from importlib import resources

# (suffix, replacement) detachment attempts, tried in order.
_NOUN_RULES = (
    ("ses", "s"),
    ("ies", "y"),
    ("es", "e"),
    ("es", ""),
    ("s", ""),
)

_VERB_RULES = (
    ("ing", ""),
    ("ing", "e"),
    ("ed", ""),
    ("ed", "e"),
    ("ies", "y"),
    ("es", "e"),
    ("s", ""),
)


def _read_data(name: str) -> str:
    return resources.files("bibliotext.data").joinpath(name).read_text("utf-8")


@lru_cache(maxsize=1)
def exception_table() -> dict[str, str]:
    table: dict[str, str] = {}
    for filename in ("lemma_exceptions_noun.txt", "lemma_exceptions_verb.txt"):
        for line in _read_data(filename).splitlines():
            if not line.strip():
                continue
            inflected, base = line.split()
            table.setdefault(inflected, base)
    return table


@lru_cache(maxsize=1)
def base_forms() -> frozenset[str]:
    return frozenset(_read_data("baseforms_en.txt").split())


def _candidates(token: str, rules: tuple[tuple[str, str], ...]):
    for suffix, replacement in rules:
        if token.endswith(suffix) and len(token) > len(suffix):
            yield token[: -len(suffix)] + replacement


def lemmatize_token(token: str) -> str:
    """Map a lowercase token to its base form, or return it unchanged."""
    exceptions = exception_table()
    if token in exceptions:
        return exceptions[token]
    known = base_forms()
    if token in known:
        return token
    for candidate in _candidates(token, _NOUN_RULES):
        if candidate in known:
            return candidate
    for candidate in _candidates(token, _VERB_RULES):
        if candidate in known:
            return candidate
    return token

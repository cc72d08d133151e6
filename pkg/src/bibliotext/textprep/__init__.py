"""Shared text preparation: cleaning, tokenization, stopwords, normalization.

Every analysis funnels text through this pipeline:
clean -> tokenize -> stopword removal -> lemmatize/stem -> corpus.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from ..capability import PROSE_TOKEN_THRESHOLD
from ..errors import NonTextColumn, UnknownColumn
from ..ingest import ABSTRACT, TITLE, Dataset
from .lemmatizer import lemmatize_token
from .porter2 import stem as stem_token

__all__ = [
    "PrepOptions",
    "TokenizedCorpus",
    "clean_text",
    "tokenize",
    "remove_stopwords",
    "lemmatize_token",
    "stem_token",
    "build_corpus",
    "bundled_stopwords",
]


@lru_cache(maxsize=1)
def bundled_stopwords() -> frozenset[str]:
    text = resources.files("bibliotext.data").joinpath("stopwords_en.txt").read_text("utf-8")
    return frozenset(w.strip() for w in text.splitlines() if w.strip())


@dataclass(frozen=True)
class PrepOptions:
    lowercase: bool = True
    remove_punctuation: bool = True
    remove_copyright: bool = False
    extra_stopwords: frozenset[str] = frozenset()
    normalization: str = "lemmatize"  # none | lemmatize | stem

    def __post_init__(self):
        if self.normalization not in ("none", "lemmatize", "stem"):
            raise ValueError(f"unknown normalization: {self.normalization!r}")
        cleaned = frozenset(w.lower() for w in self.extra_stopwords if w)
        object.__setattr__(self, "extra_stopwords", cleaned)


@dataclass(frozen=True)
class TokenizedCorpus:
    """Documents as token-id lists over a first-seen-ordered vocabulary."""

    docs: tuple[tuple[int, ...], ...]
    vocabulary: tuple[str, ...]
    doc_ids: tuple[int, ...]
    term_frequencies: tuple[int, ...]

    @property
    def vocab_size(self) -> int:
        return len(self.vocabulary)

    def doc_tokens(self, i: int) -> list[str]:
        return [self.vocabulary[t] for t in self.docs[i]]


# Sentence boundaries for copyright stripping: keep the delimiter attached.
_SENTENCE_RE = re.compile(r"[^.!?]*[.!?]?")
_COPYRIGHT_RE = re.compile(r"©|\(c\)\s*\d{4}|\bcopyright\b", re.IGNORECASE)
_PUNCT_RE = re.compile(r"[^\w\s]|_", re.UNICODE)
_WS_RE = re.compile(r"\s+")
_TOKEN_RE = re.compile(r"[^\W_]+(?:['\-][^\W_]+)*", re.UNICODE)


def clean_text(text: str, opts: PrepOptions = PrepOptions()) -> str:
    """Apply copyright/punctuation/case cleaning and collapse whitespace."""
    if opts.remove_copyright and text:
        kept = [s for s in _SENTENCE_RE.findall(text) if s and not _COPYRIGHT_RE.search(s)]
        text = " ".join(kept)
    if opts.remove_punctuation:
        text = _PUNCT_RE.sub(" ", text)
    if opts.lowercase:
        text = text.casefold()
    return _WS_RE.sub(" ", text).strip()


def tokenize(text: str) -> list[str]:
    """Maximal alphanumeric runs, keeping internal hyphens and apostrophes."""
    return _TOKEN_RE.findall(text)


def remove_stopwords(tokens: list[str], extra_stopwords: frozenset[str] = frozenset()) -> list[str]:
    """Drop bundled + user stopwords, case-insensitively, preserving order."""
    stop = bundled_stopwords() | extra_stopwords
    return [t for t in tokens if t.lower() not in stop]


def _usable_text_column(ds: Dataset, column: str) -> bool:
    if column in (TITLE, ABSTRACT):
        return True
    if ds.column_kind(column) != "text":
        return False
    cells = [v for v in ds.column(column) if v.strip()]
    if not cells:
        return False
    return sum(len(v.split()) for v in cells) / len(cells) >= PROSE_TOKEN_THRESHOLD


def prepare_tokens(text: str, opts: PrepOptions) -> list[str]:
    """Full per-document pipeline used by build_corpus."""
    tokens = remove_stopwords(tokenize(clean_text(text, opts)), opts.extra_stopwords)
    if opts.normalization == "lemmatize":
        tokens = [lemmatize_token(t) for t in tokens]
    elif opts.normalization == "stem":
        tokens = [stem_token(t) for t in tokens]
    return tokens


def build_corpus(ds: Dataset, column: str, opts: PrepOptions = PrepOptions()) -> TokenizedCorpus:
    """Tokenize one text column into a corpus; empty rows stay as empty docs."""
    if column not in ds.column_names:
        raise UnknownColumn(column)
    if not _usable_text_column(ds, column):
        raise NonTextColumn(column)

    vocab_ids: dict[str, int] = {}
    docs: list[tuple[int, ...]] = []
    counts: list[int] = []
    for value in ds.column(column):
        ids = []
        for token in prepare_tokens(value, opts):
            idx = vocab_ids.get(token)
            if idx is None:
                idx = len(vocab_ids)
                vocab_ids[token] = idx
                counts.append(0)
            counts[idx] += 1
            ids.append(idx)
        docs.append(tuple(ids))

    return TokenizedCorpus(
        docs=tuple(docs),
        vocabulary=tuple(vocab_ids),
        doc_ids=tuple(range(ds.row_count)),
        term_frequencies=tuple(counts),
    )

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bibliotext.errors import NonTextColumn, UnknownColumn
from bibliotext.ingest import SourceKind, parse_dataset
from bibliotext.textprep import (
    PrepOptions,
    build_corpus,
    bundled_stopwords,
    clean_text,
    remove_stopwords,
    tokenize,
)


def test_clean_text_removes_copyright_sentence():
    opts = PrepOptions(remove_copyright=True)
    assert clean_text("Results shown. © 2023 Elsevier Ltd.", opts) == "results shown"


def test_clean_text_copyright_variants():
    opts = PrepOptions(remove_copyright=True)
    assert clean_text("Finding one. (c) 2021 SAGE.", opts) == "finding one"
    assert clean_text("Finding one. Copyright 2022 the authors.", opts) == "finding one"
    # "(c)" without a year is not a copyright marker
    assert clean_text("see (c) below.", opts) == "see c below"


def test_clean_text_punctuation_to_space():
    assert clean_text("state-of-the-art!") == "state of the art"


def test_clean_text_empty():
    assert clean_text("") == ""


def test_clean_text_identity_up_to_whitespace():
    opts = PrepOptions(lowercase=False, remove_punctuation=False, remove_copyright=False)
    assert clean_text("Keep  ALL  (this)! ", opts) == "Keep ALL (this)!"


@given(st.text(max_size=120))
def test_clean_text_all_off_is_whitespace_collapse(text):
    opts = PrepOptions(lowercase=False, remove_punctuation=False, remove_copyright=False)
    assert clean_text(text, opts) == " ".join(text.split())


def test_tokenize():
    assert tokenize("topic modeling") == ["topic", "modeling"]
    assert tokenize("don't stop") == ["don't", "stop"]
    assert tokenize("  ") == []
    assert tokenize("state-of-the-art x2") == ["state-of-the-art", "x2"]


def test_remove_stopwords():
    assert remove_stopwords(["the", "topic", "of", "models"]) == ["topic", "models"]
    assert remove_stopwords(["topic"], frozenset({"topic"})) == []
    assert remove_stopwords([]) == []
    assert remove_stopwords(["The", "Topic"]) == ["Topic"]


def test_remove_stopwords_idempotent():
    tokens = ["the", "quick", "brown", "fox", "is", "here"]
    once = remove_stopwords(tokens)
    assert remove_stopwords(once) == once


def test_bundled_stopword_list_size():
    assert len(bundled_stopwords()) == 179


def _dataset(rows: list[str], column: str = "Abstract"):
    lines = [column] + ['"%s"' % r.replace('"', '""') for r in rows]
    return parse_dataset(("\n".join(lines) + "\n").encode(), SourceKind.CUSTOM)


def test_build_corpus_defaults():
    ds = _dataset(["Apples are good", "good apples"])
    corpus = build_corpus(ds, "Abstract")
    assert [corpus.doc_tokens(i) for i in range(2)] == [["apple", "good"], ["good", "apple"]]
    assert corpus.vocabulary == ("apple", "good")


def test_build_corpus_empty_row_kept():
    ds = _dataset([""])
    corpus = build_corpus(ds, "Abstract")
    assert corpus.docs == ((),)
    assert corpus.vocabulary == ()


def test_build_corpus_stemming():
    ds = _dataset(["running runs"])
    stemmed = build_corpus(ds, "Abstract", PrepOptions(normalization="stem"))
    assert stemmed.doc_tokens(0) == ["run", "run"]
    raw = build_corpus(ds, "Abstract", PrepOptions(normalization="none"))
    assert raw.doc_tokens(0) == ["running", "runs"]


def test_build_corpus_row_count_preserved():
    ds = _dataset(["one two three", "", "four five six"])
    corpus = build_corpus(ds, "Abstract")
    assert len(corpus.docs) == ds.row_count
    assert corpus.doc_ids == (0, 1, 2)


def test_build_corpus_term_frequencies_sum():
    ds = _dataset(["alpha beta alpha", "beta gamma"])
    corpus = build_corpus(ds, "Abstract", PrepOptions(normalization="none"))
    assert sum(corpus.term_frequencies) == sum(len(d) for d in corpus.docs)


def test_build_corpus_errors():
    ds = _dataset(["prose goes here today"])
    with pytest.raises(UnknownColumn):
        build_corpus(ds, "Nope")
    numeric = parse_dataset(b"Count\n1\n2\n", SourceKind.CUSTOM)
    with pytest.raises(NonTextColumn):
        build_corpus(numeric, "Count")


def test_extra_stopwords_are_normalized():
    opts = PrepOptions(extra_stopwords=frozenset({"Topic", ""}))
    assert opts.extra_stopwords == frozenset({"topic"})

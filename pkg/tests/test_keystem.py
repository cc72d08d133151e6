from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bibliotext.errors import NoKeywordColumns, UnknownColumn
from bibliotext.ingest import SourceKind, parse_dataset
from bibliotext.keystem import distinct_keywords, replay_keyword_map, stem_keywords

from conftest import fixture_bytes


def kw_dataset(cells: list[str], column: str = "Keywords"):
    lines = [column] + ['"%s"' % c.replace('"', '""') for c in cells]
    return parse_dataset(("\n".join(lines) + "\n").encode(), SourceKind.CUSTOM)


def test_case_merge_example():
    ds = kw_dataset(["Apples; Apple"])
    out, mapping = stem_keywords(ds)
    assert out.records[0].keyword_fields["Keywords"] == ("apple",)
    assert mapping.pairs == (("apples", "apple"), ("apple", "apple"))


def test_multiword_keywords():
    ds = kw_dataset(["Topic Modeling; Topic Models"])
    out, _ = stem_keywords(ds)
    assert out.records[0].keyword_fields["Keywords"] == ("topic modeling", "topic model")


def test_empty_cell():
    ds = kw_dataset([""])
    out, mapping = stem_keywords(ds)
    assert out.records[0].keyword_fields["Keywords"] == ()
    assert mapping.pairs == ()


def test_stem_method():
    ds = kw_dataset(["Running; Runs"])
    out, _ = stem_keywords(ds, method="stem")
    assert out.records[0].keyword_fields["Keywords"] == ("run",)


def test_errors():
    ds = kw_dataset(["a"])
    with pytest.raises(UnknownColumn):
        stem_keywords(ds, columns=["Missing"])
    no_kw = parse_dataset(b"Title\nX\n", SourceKind.CUSTOM)
    with pytest.raises(NoKeywordColumns):
        stem_keywords(no_kw)


def test_replay_reproduces_output():
    ds = parse_dataset(fixture_bytes("scopus"))
    out, mapping = stem_keywords(ds)
    cols = ["Author Keywords", "Index Keywords"]
    assert replay_keyword_map(ds, mapping, cols).records == out.records


def test_lemmatize_idempotent_on_fixture():
    ds = parse_dataset(fixture_bytes("scopus"))
    once, _ = stem_keywords(ds)
    twice, _ = stem_keywords(once)
    assert twice.records == once.records


def test_vocabulary_never_grows():
    ds = parse_dataset(fixture_bytes("wos"))
    cols = ["Author Keywords", "Keywords Plus"]
    out, _ = stem_keywords(ds)
    assert len(distinct_keywords(out, cols)) <= len(distinct_keywords(ds, cols))


keyword_strategy = st.lists(
    st.lists(
        st.text(alphabet="abcdefghijklmnopqrstuvwxyzABCDE ", min_size=1, max_size=12)
        .map(lambda s: " ".join(s.split())).filter(bool),
        max_size=4,
    ).map(lambda kws: "; ".join(kws)),
    min_size=1,
    max_size=8,
)


@settings(max_examples=60)
@given(cells=keyword_strategy, method=st.sampled_from(["lemmatize", "stem"]))
def test_randomized_replay_and_vocabulary(cells, method):
    ds = kw_dataset(cells)
    out, mapping = stem_keywords(ds, method=method)
    assert replay_keyword_map(ds, mapping, ["Keywords"]).records == out.records
    assert len(distinct_keywords(out, ["Keywords"])) <= len(distinct_keywords(ds, ["Keywords"]))

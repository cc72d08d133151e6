from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bibliotext import ingest
from bibliotext.errors import EmptyFile, MalformedRow, MissingHeader, UndecodableFile
from bibliotext.ingest import SourceKind, detect_source, parse_dataset, split_multivalue, to_canonical_csv

from conftest import SOURCE_FIXTURES, fixture_bytes


# --- detect_source ---------------------------------------------------------

def test_detect_wos_tab_header():
    raw = b"PT\tAU\tTI\tSO\tDE\tAB\tPY\tTC\tDT\n"
    assert detect_source(raw) is SourceKind.WOS


def test_detect_scopus_header():
    raw = b"Authors,Title,Year,Source title,Cited by,Abstract,Author Keywords,Document Type\n"
    assert detect_source(raw) is SourceKind.SCOPUS


def test_detect_custom_fallback():
    assert detect_source(b"colA,colB\n1,2\n") is SourceKind.CUSTOM


@pytest.mark.parametrize("name,expected", [
    ("scopus", SourceKind.SCOPUS),
    ("wos", SourceKind.WOS),
    ("wos_tagged", SourceKind.WOS),
    ("lens", SourceKind.LENS),
    ("custom_keywords", SourceKind.CUSTOM),
    ("custom_full", SourceKind.CUSTOM),
    ("custom_minimal", SourceKind.CUSTOM),
])
def test_detect_fixtures(name, expected):
    assert detect_source(fixture_bytes(name)) is expected


def test_detect_is_deterministic():
    raw = fixture_bytes("scopus")
    assert detect_source(raw) is detect_source(raw)


def test_detect_rejects_empty_and_undecodable():
    with pytest.raises(EmptyFile):
        detect_source(b"")
    with pytest.raises(EmptyFile):
        detect_source(b"   \n ")
    with pytest.raises(UndecodableFile):
        detect_source(b"\xff\xfe\x00bad latin \xa9 bytes \x81\x81")


def test_detect_accepts_utf8_bom():
    raw = b"\xef\xbb\xbfAuthors,Title,Year,Source title,Cited by\nA,B,2020,J,1\n"
    assert detect_source(raw) is SourceKind.SCOPUS


# --- parse_dataset ---------------------------------------------------------

def test_wos_tag_expansion():
    raw = b"PT\tTI\tSO\tPY\tTC\tDT\tDE\tAB\nJ\tExample\tJournal X\t2020\t3\tArticle\ta; b\tSome abstract.\n"
    ds = parse_dataset(raw, SourceKind.WOS)
    rec = ds.records[0]
    assert rec.title == "Example"
    assert rec.source_title == "Journal X"
    assert rec.publication_year == 2020
    assert rec.citations == 3
    assert rec.document_type == "Article"
    assert rec.keyword_fields["Author Keywords"] == ("a", "b")
    assert rec.abstract == "Some abstract."
    assert rec.extra == {"PT": "J"}


def test_empty_data_section():
    ds = parse_dataset(b"Title,Abstract\n", SourceKind.CUSTOM)
    assert ds.row_count == 0
    assert [c.name for c in ds.column_catalog] == ["Title", "Abstract"]


def test_scopus_numeric_fields():
    raw = b'Authors,Title,Year,Source title,Cited by\nX,Paper,2021,Journal,7\n'
    rec = parse_dataset(raw, SourceKind.SCOPUS).records[0]
    assert rec.citations == 7
    assert rec.publication_year == 2021


def test_missing_numeric_fields_parse_to_absent():
    raw = b'Title,Publication Year,Citations\nPaper,,\n'
    rec = parse_dataset(raw, SourceKind.CUSTOM).records[0]
    assert rec.publication_year is None
    assert rec.citations is None


def test_missing_title_rows_flagged():
    raw = b"Title,Abstract\n,an abstract\nReal title,text\n"
    ds = parse_dataset(raw, SourceKind.CUSTOM)
    assert ds.missing_title_rows == (0,)
    assert ds.row_count == 2


def test_malformed_row_reports_index():
    raw = b"a,b,c\n1,2,3\n1,2\n1,2,3,4\n"
    with pytest.raises(MalformedRow) as exc:
        parse_dataset(raw, SourceKind.CUSTOM)
    assert [(r[0]) for r in exc.value.rows] == [1, 2]


def test_quoted_fields_with_commas_and_quotes():
    raw = b'Title,Abstract\n"A title, with comma","He said ""hi"" once"\n'
    rec = parse_dataset(raw, SourceKind.CUSTOM).records[0]
    assert rec.title == "A title, with comma"
    assert rec.abstract == 'He said "hi" once'


def test_missing_header():
    with pytest.raises(MissingHeader):
        parse_dataset(b'"",""\n1,2\n', SourceKind.CUSTOM)


@pytest.mark.parametrize("name", ["scopus", "wos", "wos_tagged", "lens"])
def test_fixture_canonical_fields_populated(name):
    ds = parse_dataset(fixture_bytes(name))
    for rec in ds.records:
        assert rec.title
        assert rec.abstract
        assert rec.publication_year is not None
        assert rec.citations is not None
        assert rec.document_type
        assert rec.source_title
        assert rec.keyword_fields


@pytest.mark.parametrize("name", list(SOURCE_FIXTURES))
def test_fixture_round_trip(name):
    ds = parse_dataset(fixture_bytes(name))
    again = parse_dataset(to_canonical_csv(ds).encode(), SourceKind.CUSTOM)
    assert again.records == ds.records


def test_catalog_covers_all_columns():
    ds = parse_dataset(fixture_bytes("scopus"))
    names = set(ds.column_names)
    for rec in ds.records:
        assert set(rec.extra) <= names
        assert set(rec.keyword_fields) <= names
    assert ds.row_count == len(ds.records)


def test_wos_tagged_continuation_lines():
    ds = parse_dataset(fixture_bytes("wos_tagged"))
    rec = ds.records[0]
    assert rec.title == "Collapsed inference for library topic maps"
    assert rec.extra["AU"] == "Alvarez, M; Brown, K"
    assert "convergence behavior" in rec.abstract


def test_column_kinds():
    ds = parse_dataset(fixture_bytes("scopus"))
    kinds = {c.name: c.kind for c in ds.column_catalog}
    assert kinds["Publication Year"] == "year"
    assert kinds["Citations"] == "numeric"
    assert kinds["Author Keywords"] == "multivalue"
    assert kinds["Abstract"] == "text"


# --- split_multivalue ------------------------------------------------------

def test_split_multivalue_trims_and_drops_empty():
    assert split_multivalue("topic modeling; libraries ;NLP") == ["topic modeling", "libraries", "NLP"]
    assert split_multivalue(";;") == []
    assert split_multivalue("single") == ["single"]


@given(st.text(max_size=80))
def test_split_multivalue_never_yields_empty(cell):
    parts = split_multivalue(cell)
    assert all(p and p == p.strip() for p in parts)


@given(st.lists(st.text(alphabet=st.characters(blacklist_characters=";", blacklist_categories=("Cs",)), min_size=1, max_size=10).map(str.strip).filter(bool), max_size=6))
def test_split_multivalue_preserves_order(tokens):
    cell = ";".join(tokens)
    assert split_multivalue(cell) == tokens

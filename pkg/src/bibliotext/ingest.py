"""Source detection, parsing, and normalization of bibliographic exports.

Uploaded files come from Scopus (CSV), Web of Science (tab-delimited or
tagged plain text), Lens.org (CSV), or are user-supplied delimited files
("custom"). Everything is normalized into the :class:`Dataset` model, the
canonical table every analysis consumes.

Column-name signatures and field renames per database live in editable
JSON files under ``mappings/`` so vendor export drift can be absorbed
without code changes. Detection requires at least ``min_signature_matches``
signature columns (default 3) to be present in the header.

Encoding policy: UTF-8 and UTF-8 with BOM only. Anything else raises
:class:`~bibliotext.errors.UndecodableFile` rather than guessing.
"""
from __future__ import annotations

import csv
import enum
import io
import json
import re
from dataclasses import dataclass, field
from importlib import resources

from .errors import (
    EmptyFile,
    MalformedRow,
    MissingHeader,
    UndecodableFile,
    UnknownColumn,
)

# Canonical field names every downstream module keys on.
TITLE = "Title"
ABSTRACT = "Abstract"
PUBLICATION_YEAR = "Publication Year"
CITATIONS = "Citations"
DOCUMENT_TYPE = "Document Type"
SOURCE_TITLE = "Source Title"

CANONICAL_FIELDS = (TITLE, ABSTRACT, PUBLICATION_YEAR, CITATIONS, DOCUMENT_TYPE, SOURCE_TITLE)

# A column holds keyword lists when its (canonical) name contains this token.
KEYWORD_MARKER = "keyword"

# Share of non-empty cells that must contain a semicolon for a column to be
# classified as multivalue.
MULTIVALUE_CELL_FRACTION = 0.10


class SourceKind(str, enum.Enum):
    SCOPUS = "scopus"
    WOS = "wos"
    LENS = "lens"
    CUSTOM = "custom"


@dataclass(frozen=True)
class FieldMapping:
    """Rename table from source-specific column names to canonical names.

    ``signature`` lists header names whose presence identifies the source;
    ``columns`` maps source names to canonical names. Source columns absent
    from ``columns`` pass through with their original names.
    """

    source: SourceKind
    signature: tuple[str, ...]
    columns: dict[str, str]
    min_signature_matches: int = 3

    def matches(self, header: list[str]) -> bool:
        present = set(header)
        hits = sum(1 for name in self.signature if name in present)
        return hits >= self.min_signature_matches

    def canonical_name(self, source_column: str) -> str:
        return self.columns.get(source_column, source_column)


def load_mapping(kind: SourceKind) -> FieldMapping:
    """Load the shipped mapping config for ``kind``.

    The custom mapping is the identity: canonical names map to themselves
    and everything else passes through.
    """
    if kind is SourceKind.CUSTOM:
        return FieldMapping(source=SourceKind.CUSTOM, signature=(), columns={}, min_signature_matches=0)
    text = resources.files("bibliotext.mappings").joinpath(f"{kind.value}.json").read_text("utf-8")
    raw = json.loads(text)
    return FieldMapping(
        source=SourceKind(raw["source"]),
        signature=tuple(raw["signature"]),
        columns=dict(raw["columns"]),
        min_signature_matches=int(raw.get("min_signature_matches", 3)),
    )


@dataclass(frozen=True)
class ColumnInfo:
    name: str
    kind: str  # one of: text, numeric, year, multivalue


@dataclass(frozen=True)
class BiblioRecord:
    """One normalized bibliographic row.

    Missing optional values are ``None`` (never 0 or ""); a missing title is
    the empty string and the row index lands in ``Dataset.missing_title_rows``.
    """

    title: str = ""
    abstract: str | None = None
    keyword_fields: dict[str, tuple[str, ...]] = field(default_factory=dict)
    publication_year: int | None = None
    citations: int | None = None
    document_type: str | None = None
    source_title: str | None = None
    extra: dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class Dataset:
    """Immutable table of records plus provenance and column metadata."""

    records: tuple[BiblioRecord, ...]
    source: SourceKind
    column_catalog: tuple[ColumnInfo, ...]
    missing_title_rows: tuple[int, ...] = ()

    @property
    def row_count(self) -> int:
        return len(self.records)

    @property
    def column_names(self) -> list[str]:
        return [c.name for c in self.column_catalog]

    def column_kind(self, name: str) -> str:
        for col in self.column_catalog:
            if col.name == name:
                return col.kind
        raise UnknownColumn(name)

    def cell(self, record: BiblioRecord, name: str) -> str:
        """Canonical string view of one cell (keyword lists re-joined with '; ')."""
        if name == TITLE:
            return record.title
        if name == ABSTRACT:
            return record.abstract or ""
        if name == PUBLICATION_YEAR:
            return "" if record.publication_year is None else str(record.publication_year)
        if name == CITATIONS:
            return "" if record.citations is None else str(record.citations)
        if name == DOCUMENT_TYPE:
            return record.document_type or ""
        if name == SOURCE_TITLE:
            return record.source_title or ""
        if name in record.keyword_fields:
            return "; ".join(record.keyword_fields[name])
        if name in record.extra:
            return record.extra[name]
        return ""

    def column(self, name: str) -> list[str]:
        if name not in self.column_names:
            raise UnknownColumn(name)
        return [self.cell(r, name) for r in self.records]


def split_multivalue(cell: str, delimiter: str = ";") -> list[str]:
    """Split a multivalue cell, trimming whitespace and dropping empty tokens.

    Order and internal case are preserved. Total function: any string input
    yields a (possibly empty) list of non-empty strings.
    """
    return [tok for tok in (part.strip() for part in cell.split(delimiter)) if tok]


def _decode(raw: bytes) -> str:
    if not raw or not raw.strip():
        raise EmptyFile("uploaded file is empty")
    try:
        text = raw.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise UndecodableFile("file is not UTF-8 (UTF-8 with BOM is accepted)") from exc
    return text.replace("\r\n", "\n").replace("\r", "\n")


_WOS_TAG_RE = re.compile(r"^[A-Z][A-Z0-9] ")


def _looks_like_wos_tagged(text: str) -> bool:
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if not lines:
        return False
    first = lines[0]
    opener = first.startswith("FN ") or first.startswith("PT ")
    has_end = any(ln.rstrip() == "ER" for ln in lines)
    return opener and has_end


def _header_fields(line: str, delimiter: str) -> list[str]:
    reader = csv.reader(io.StringIO(line), delimiter=delimiter,
                        quoting=csv.QUOTE_NONE if delimiter == "\t" else csv.QUOTE_MINIMAL)
    for row in reader:
        return [name.strip() for name in row]
    return []


def detect_source(raw: bytes, filename: str = "") -> SourceKind:
    """Identify which database exported ``raw``; ``custom`` when none match.

    Tab-delimited headers are checked against the WoS tag signature, comma
    headers against Scopus and Lens; the WoS tagged plain-text layout (tag at
    line start, ``ER`` record terminators) is recognized structurally.
    Deterministic for fixed mapping configs; ties go to the higher hit count.
    """
    text = _decode(raw)
    if _looks_like_wos_tagged(text):
        return SourceKind.WOS

    first_line = next((ln for ln in text.split("\n") if ln.strip()), "")
    wos = load_mapping(SourceKind.WOS)
    if "\t" in first_line:
        if wos.matches(_header_fields(first_line, "\t")):
            return SourceKind.WOS
        return SourceKind.CUSTOM

    header = _header_fields(first_line, ",")
    best: SourceKind | None = None
    best_hits = 0
    for kind in (SourceKind.SCOPUS, SourceKind.LENS):
        mapping = load_mapping(kind)
        hits = sum(1 for name in mapping.signature if name in set(header))
        if mapping.matches(header) and hits > best_hits:
            best, best_hits = kind, hits
    return best or SourceKind.CUSTOM


def _parse_year(value: str) -> int | None:
    value = value.strip()
    if re.fullmatch(r"\d{4}", value):
        return int(value)
    return None


def _parse_citations(value: str) -> int | None:
    value = value.strip()
    if value.isdigit():
        return int(value)
    return None


def _infer_kind(values: list[str]) -> str:
    non_empty = [v.strip() for v in values if v.strip()]
    if not non_empty:
        return "text"
    if all(re.fullmatch(r"[12]\d{3}", v) for v in non_empty):
        return "year"
    if all(re.fullmatch(r"-?\d+(\.\d+)?", v) for v in non_empty):
        return "numeric"
    with_semicolon = sum(1 for v in non_empty if ";" in v)
    if with_semicolon / len(non_empty) >= MULTIVALUE_CELL_FRACTION:
        return "multivalue"
    return "text"


def _build_records(header: list[str], rows: list[list[str]]) -> tuple[tuple[BiblioRecord, ...], tuple[ColumnInfo, ...], tuple[int, ...]]:
    records = []
    for row in rows:
        keyword_fields: dict[str, tuple[str, ...]] = {}
        extra: dict[str, str] = {}
        title = ""
        abstract = document_type = source_title = None
        year = citations = None
        for name, value in zip(header, row):
            if name == TITLE:
                title = value.strip()
            elif name == ABSTRACT:
                abstract = value.strip() or None
            elif name == PUBLICATION_YEAR:
                year = _parse_year(value)
            elif name == CITATIONS:
                citations = _parse_citations(value)
            elif name == DOCUMENT_TYPE:
                document_type = value.strip() or None
            elif name == SOURCE_TITLE:
                source_title = value.strip() or None
            elif KEYWORD_MARKER in name.lower():
                keyword_fields[name] = tuple(split_multivalue(value))
            else:
                extra[name] = value
        records.append(BiblioRecord(
            title=title, abstract=abstract, keyword_fields=keyword_fields,
            publication_year=year, citations=citations,
            document_type=document_type, source_title=source_title, extra=extra,
        ))

    catalog = tuple(
        ColumnInfo(name, _infer_kind([row[i] if i < len(row) else "" for row in rows]))
        for i, name in enumerate(header)
    )
    flagged = tuple(i for i, rec in enumerate(records) if not rec.title) if TITLE in header else ()
    return tuple(records), catalog, flagged


def _parse_delimited(text: str, mapping: FieldMapping, delimiter: str) -> tuple[list[str], list[list[str]]]:
    reader = csv.reader(
        io.StringIO(text), delimiter=delimiter,
        quoting=csv.QUOTE_NONE if delimiter == "\t" else csv.QUOTE_MINIMAL,
    )
    try:
        raw_header = next(reader)
    except StopIteration:
        raise MissingHeader("no header row found")
    header = [mapping.canonical_name(name.strip()) for name in raw_header]
    if not any(header):
        raise MissingHeader("header row is blank")

    rows: list[list[str]] = []
    bad: list[tuple[int, int, int]] = []
    for i, row in enumerate(reader):
        if not row:
            continue  # blank line
        if len(row) != len(header):
            bad.append((i, len(header), len(row)))
            continue
        rows.append(row)
    if bad:
        raise MalformedRow(bad)
    return header, rows


# Tags whose continuation lines are separate entries, not wrapped prose.
_WOS_LIST_TAGS = {"AU", "AF", "BA", "BE", "CA", "CR", "OI", "RI"}


def _parse_wos_tagged(text: str, mapping: FieldMapping) -> tuple[list[str], list[list[str]]]:
    """Parse the WoS plain-text tagged layout into header + rows.

    Each record starts at ``PT`` and ends at ``ER``; a two-letter tag at the
    start of a line opens a field and indented lines continue it. ``FN``/``VR``
    preamble and the trailing ``EF`` marker are skipped.
    """
    field_order: list[str] = []
    row_dicts: list[dict[str, str]] = []
    current: dict[str, str] | None = None
    tag = ""
    for line in text.split("\n"):
        stripped = line.rstrip()
        if not stripped:
            continue
        if stripped == "EF":
            break
        if stripped == "ER":
            if current is not None:
                row_dicts.append(current)
            current, tag = None, ""
            continue
        if _WOS_TAG_RE.match(stripped) or (len(stripped) == 2 and stripped.isupper()):
            tag, _, value = stripped.partition(" ")
            if tag in ("FN", "VR"):
                continue
            if tag == "PT":
                current = {}
            if current is None:
                continue  # stray field before the first PT
            current[tag] = value.strip()
            if tag not in field_order:
                field_order.append(tag)
        elif line.startswith(" ") and current is not None and tag:
            joiner = "; " if tag in _WOS_LIST_TAGS else " "
            current[tag] = (current[tag] + joiner + stripped.strip()).strip("; ")
    if current is not None:
        row_dicts.append(current)
    if not field_order:
        raise MissingHeader("no WoS field tags found")

    header = [mapping.canonical_name(t) for t in field_order]
    rows = [[rd.get(t, "") for t in field_order] for rd in row_dicts]
    return header, rows


def parse_dataset(raw: bytes, kind: SourceKind | None = None, mapping: FieldMapping | None = None) -> Dataset:
    """Parse ``raw`` into a :class:`Dataset`.

    ``kind`` defaults to :func:`detect_source`; ``mapping`` defaults to the
    shipped config for that kind. CSV input is read per RFC 4180, WoS
    tab-delimited input with hard tabs and no quoting. Multivalue keyword
    cells are split on semicolons; rows with a missing title are retained
    and flagged in ``missing_title_rows``.
    """
    text = _decode(raw)
    if kind is None:
        kind = detect_source(raw)
    if mapping is None:
        mapping = load_mapping(kind)

    if kind is SourceKind.WOS and _looks_like_wos_tagged(text):
        header, rows = _parse_wos_tagged(text, mapping)
    else:
        first_line = next((ln for ln in text.split("\n") if ln.strip()), "")
        if kind is SourceKind.WOS:
            delimiter = "\t"
        elif kind is SourceKind.CUSTOM and "\t" in first_line and "," not in first_line:
            delimiter = "\t"
        else:
            delimiter = ","
        header, rows = _parse_delimited(text, mapping, delimiter)

    records, catalog, flagged = _build_records(header, rows)
    return Dataset(records=records, source=kind, column_catalog=catalog, missing_title_rows=flagged)


def to_canonical_csv(ds: Dataset) -> str:
    """Serialize with canonical column names; reparsing as custom round-trips."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    names = ds.column_names
    writer.writerow(names)
    for rec in ds.records:
        writer.writerow([ds.cell(rec, name) for name in names])
    return buf.getvalue()

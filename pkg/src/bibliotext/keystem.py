"""The Keywords Stem feature: normalize keyword columns and report the map.

Produces the transformed dataset (the "Result") plus the full
original -> modified keyword map (the "List of Keywords"), which is a
complete witness: replaying it over the input reproduces the output.

Keywords are lowercased before transformation so differently-cased
variants merge; multi-word keywords are transformed token by token.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, replace

from .capability import detect_keyword_columns
from .errors import NoKeywordColumns, UnknownColumn
from .ingest import Dataset, split_multivalue
from .textprep import lemmatize_token, stem_token


@dataclass(frozen=True)
class KeywordMap:
    """Ordered (original, modified) pairs, unique by original."""

    pairs: tuple[tuple[str, str], ...]

    def as_dict(self) -> dict[str, str]:
        return dict(self.pairs)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["original", "modified"])
        writer.writerows(self.pairs)
        return buf.getvalue()


def _transform_keyword(keyword: str, method: str) -> str:
    transform = lemmatize_token if method == "lemmatize" else stem_token
    return " ".join(transform(tok) for tok in keyword.split())


def _transform_cell(keywords: tuple[str, ...], method: str, seen: dict[str, str]) -> tuple[str, ...]:
    out: list[str] = []
    for keyword in keywords:
        original = keyword.lower()
        modified = seen.get(original)
        if modified is None:
            modified = _transform_keyword(original, method)
            seen[original] = modified
        if modified not in out:
            out.append(modified)
    return tuple(out)


def stem_keywords(
    ds: Dataset,
    method: str = "lemmatize",
    columns: list[str] | None = None,
) -> tuple[Dataset, KeywordMap]:
    """Normalize keyword cells via lemmatization (default) or stemming.

    ``columns`` defaults to every detected keyword column. Within a cell,
    transformed keywords are deduplicated keeping first occurrence. The
    returned map records every distinct original -> modified pair in
    row-major first-occurrence order.
    """
    if method not in ("lemmatize", "stem"):
        raise ValueError(f"unknown method: {method!r}")
    detected = detect_keyword_columns(ds)
    if columns is None:
        columns = detected
    if not columns:
        raise NoKeywordColumns("dataset has no keyword columns")
    for col in columns:
        if col not in detected:
            raise UnknownColumn(col)

    seen: dict[str, str] = {}
    new_records = []
    for rec in ds.records:
        fields = dict(rec.keyword_fields)
        for col in columns:
            if col in fields:
                fields[col] = _transform_cell(fields[col], method, seen)
        new_records.append(replace(rec, keyword_fields=fields))

    mapping = KeywordMap(pairs=tuple(seen.items()))
    return replace(ds, records=tuple(new_records)), mapping


def replay_keyword_map(ds: Dataset, mapping: KeywordMap, columns: list[str]) -> Dataset:
    """Apply a previously computed map to ``ds`` (the witness property)."""
    table = mapping.as_dict()
    new_records = []
    for rec in ds.records:
        fields = dict(rec.keyword_fields)
        for col in columns:
            if col in fields:
                out: list[str] = []
                for keyword in fields[col]:
                    modified = table[keyword.lower()]
                    if modified not in out:
                        out.append(modified)
                fields[col] = tuple(out)
        new_records.append(replace(rec, keyword_fields=fields))
    return replace(ds, records=tuple(new_records))


def distinct_keywords(ds: Dataset, columns: list[str]) -> set[str]:
    """Distinct lowercased keywords across ``columns``."""
    found: set[str] = set()
    for rec in ds.records:
        for col in columns:
            for keyword in rec.keyword_fields.get(col, ()):
                found.add(keyword.lower())
    return found

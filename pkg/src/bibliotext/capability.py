"""The File Checker: which analyses does an uploaded dataset support?

Eligibility is a pure function of the column catalog plus per-column
emptiness statistics; the checker never repairs or imputes data.

Requirements per analysis:

* ``keywords_stem`` - at least one column whose name contains "keyword"
  (case-insensitive).
* ``topic_modeling`` - at least one text column: Title or Abstract with a
  non-empty cell, or any text-kind column averaging >= 3 whitespace tokens
  over its non-empty cells (separates prose from categorical codes).
* ``bidirectional_network`` - at least one multivalue (semicolon-bearing)
  column.
* ``sunburst`` - Publication Year, Citations, Document Type and Source
  Title all present with at least one non-empty cell each; rows missing a
  value are filtered later, in the sunburst module itself.
"""
from __future__ import annotations

from dataclasses import dataclass

from .ingest import (
    ABSTRACT,
    CITATIONS,
    DOCUMENT_TYPE,
    KEYWORD_MARKER,
    PUBLICATION_YEAR,
    SOURCE_TITLE,
    TITLE,
    Dataset,
)

ANALYSES = ("keywords_stem", "topic_modeling", "bidirectional_network", "sunburst")

SUNBURST_REQUIRED = (PUBLICATION_YEAR, CITATIONS, DOCUMENT_TYPE, SOURCE_TITLE)

# Mean whitespace-token count over non-empty cells above which a text column
# counts as prose.
PROSE_TOKEN_THRESHOLD = 3.0


@dataclass(frozen=True)
class AnalysisCapability:
    eligible: bool
    missing_fields: tuple[str, ...]
    usable_columns: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "eligible": self.eligible,
            "missing_fields": list(self.missing_fields),
            "usable_columns": list(self.usable_columns),
        }


@dataclass(frozen=True)
class CapabilityReport:
    analyses: dict[str, AnalysisCapability]

    def __getitem__(self, analysis: str) -> AnalysisCapability:
        return self.analyses[analysis]

    def to_json(self) -> dict:
        return {name: cap.to_json() for name, cap in self.analyses.items()}


def detect_keyword_columns(ds: Dataset) -> list[str]:
    """Columns whose name contains "keyword", case-insensitively, in catalog order."""
    return [c.name for c in ds.column_catalog if KEYWORD_MARKER in c.name.lower()]


def _non_empty(values: list[str]) -> list[str]:
    return [v for v in values if v.strip()]


def _mean_token_count(values: list[str]) -> float:
    cells = _non_empty(values)
    if not cells:
        return 0.0
    return sum(len(v.split()) for v in cells) / len(cells)


def _text_columns(ds: Dataset) -> list[str]:
    usable = []
    for col in ds.column_catalog:
        if col.name in (TITLE, ABSTRACT):
            if _non_empty(ds.column(col.name)):
                usable.append(col.name)
        elif col.kind == "text":
            if _mean_token_count(ds.column(col.name)) >= PROSE_TOKEN_THRESHOLD:
                usable.append(col.name)
    return usable


def _multivalue_columns(ds: Dataset) -> list[str]:
    return [c.name for c in ds.column_catalog if c.kind == "multivalue"]


def check_capabilities(ds: Dataset) -> CapabilityReport:
    """Report eligibility and missing fields for every analysis."""
    keyword_cols = detect_keyword_columns(ds)
    text_cols = _text_columns(ds)
    multi_cols = _multivalue_columns(ds)

    sunburst_missing = tuple(
        name for name in SUNBURST_REQUIRED
        if name not in ds.column_names or not _non_empty(ds.column(name))
    )
    sunburst_usable = tuple(n for n in SUNBURST_REQUIRED if n not in sunburst_missing)

    analyses = {
        "keywords_stem": AnalysisCapability(
            eligible=bool(keyword_cols),
            missing_fields=() if keyword_cols else ("Keywords",),
            usable_columns=tuple(keyword_cols),
        ),
        "topic_modeling": AnalysisCapability(
            eligible=bool(text_cols),
            missing_fields=() if text_cols else (TITLE, ABSTRACT),
            usable_columns=tuple(text_cols),
        ),
        "bidirectional_network": AnalysisCapability(
            eligible=bool(multi_cols),
            missing_fields=() if multi_cols else ("Keywords",),
            usable_columns=tuple(multi_cols),
        ),
        "sunburst": AnalysisCapability(
            eligible=not sunburst_missing,
            missing_fields=sunburst_missing,
            usable_columns=sunburst_usable,
        ),
    }
    return CapabilityReport(analyses=analyses)

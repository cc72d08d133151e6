"""Exception hierarchy shared across the engine.

Every error raised by the core modules derives from BibliotextError so
callers (CLI, HTTP service) can map engine failures onto exit codes and
status codes without matching on builtins.
"""
from __future__ import annotations


class BibliotextError(Exception):
    """Base class for all engine errors."""


# --- ingest ---------------------------------------------------------------

class IngestError(BibliotextError):
    """Base class for file parsing problems."""


class EmptyFile(IngestError):
    pass


class UndecodableFile(IngestError):
    """File is not UTF-8 / UTF-8-BOM."""


class MissingHeader(IngestError):
    pass


class MalformedRow(IngestError):
    """One or more data rows do not match the header column count.

    ``rows`` holds (row_index, expected_fields, actual_fields) triples,
    row_index counting data rows from 0.
    """

    def __init__(self, rows: list[tuple[int, int, int]]):
        self.rows = rows
        detail = "; ".join(
            f"row {i}: expected {exp} fields, got {got}" for i, exp, got in rows[:5]
        )
        if len(rows) > 5:
            detail += f" (+{len(rows) - 5} more)"
        super().__init__(f"malformed rows: {detail}")


# --- corpus / text prep ---------------------------------------------------

class UnknownColumn(BibliotextError):
    def __init__(self, column: str):
        self.column = column
        super().__init__(f"column not in dataset: {column!r}")


class NonTextColumn(BibliotextError):
    def __init__(self, column: str):
        self.column = column
        super().__init__(f"column is not usable as text: {column!r}")


class NoKeywordColumns(BibliotextError):
    pass


# --- topic modeling -------------------------------------------------------

class InvalidParams(BibliotextError):
    pass


class EmptyCorpus(BibliotextError):
    pass


class NoBiterms(BibliotextError):
    """Every document is shorter than two tokens."""


class DimensionMismatch(BibliotextError):
    pass


class TooFewDocs(BibliotextError):
    pass


class LabelLengthMismatch(BibliotextError):
    pass


class InvalidLambda(InvalidParams):
    pass


# --- association rules ----------------------------------------------------

class InvalidSupport(BibliotextError):
    pass


class InvalidConfidence(BibliotextError):
    pass


class NoMultivalueContent(BibliotextError):
    pass


# --- sunburst -------------------------------------------------------------

class NotEligible(BibliotextError):
    """Analysis requirements not met; ``missing_fields`` names what is absent."""

    def __init__(self, analysis: str, missing_fields: list[str]):
        self.analysis = analysis
        self.missing_fields = missing_fields
        super().__init__(f"{analysis} not eligible; missing: {', '.join(missing_fields)}")


class EmptyAfterFilter(BibliotextError):
    pass

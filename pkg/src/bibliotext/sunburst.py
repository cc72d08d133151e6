"""Three-ring hierarchy: document type -> source title -> publication year.

Slice sizes are document counts. Color values carry citations: a leaf
(year ring) shows the citation total of its documents, while every inner
node shows the count-weighted mean citations per document of its subtree,
so inner values always lie between the per-document means of their
children.

Rows missing any of the four required fields are excluded up front and the
exclusion count is reported alongside the tree.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .capability import SUNBURST_REQUIRED, check_capabilities
from .errors import EmptyAfterFilter, NotEligible
from .ingest import Dataset

LAYERS = ("root", "document_type", "source_title", "publication_year")


@dataclass(frozen=True)
class SunburstNode:
    label: str
    layer: str
    count: int
    value: float
    children: tuple["SunburstNode", ...] = ()

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "layer": self.layer,
            "count": self.count,
            "value": self.value,
            "children": [c.to_json() for c in self.children],
        }


@dataclass(frozen=True)
class SunburstResult:
    root: SunburstNode
    included_rows: int
    excluded_rows: int

    def to_json(self) -> dict:
        return {
            "root": self.root.to_json(),
            "included_rows": self.included_rows,
            "excluded_rows": self.excluded_rows,
            "flat": flatten(self.root),
        }


def _mean(node: SunburstNode) -> float:
    """Per-document citation mean: leaves store totals, inner nodes means."""
    if node.layer == "publication_year":
        return node.value / node.count
    return node.value


def _inner_value(children: tuple[SunburstNode, ...]) -> float:
    total = sum(c.count for c in children)
    return sum(c.count * _mean(c) for c in children) / total


def _order(children: list[SunburstNode]) -> tuple[SunburstNode, ...]:
    return tuple(sorted(children, key=lambda c: (-c.count, c.label)))


def build_sunburst(ds: Dataset, year_range: tuple[int, int] | None = None) -> SunburstResult:
    """Aggregate the dataset into the three-ring hierarchy.

    ``year_range`` (inclusive) filters rows before grouping. Missing
    citation counts enter the sum as 0 so slice sizes stay truthful.
    """
    capability = check_capabilities(ds)["sunburst"]
    if not capability.eligible:
        raise NotEligible("sunburst", list(capability.missing_fields))

    groups: dict[tuple[str, str, int], list[int]] = {}
    excluded = 0
    included = 0
    for rec in ds.records:
        # missing citations become 0 later so slice sizes stay truthful
        if rec.document_type is None or rec.source_title is None or rec.publication_year is None:
            excluded += 1
            continue
        if year_range is not None and not year_range[0] <= rec.publication_year <= year_range[1]:
            continue
        included += 1
        key = (rec.document_type, rec.source_title, rec.publication_year)
        groups.setdefault(key, []).append(rec.citations if rec.citations is not None else 0)

    if not groups:
        raise EmptyAfterFilter("no rows remain after filtering")

    doc_types: dict[str, dict[str, list[SunburstNode]]] = {}
    for (doc_type, source, year), citation_counts in sorted(groups.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2])):
        leaf = SunburstNode(
            label=str(year),
            layer="publication_year",
            count=len(citation_counts),
            value=float(sum(citation_counts)),
        )
        doc_types.setdefault(doc_type, {}).setdefault(source, []).append(leaf)

    type_nodes = []
    for doc_type, sources in doc_types.items():
        source_nodes = []
        for source, leaves in sources.items():
            ordered = _order(leaves)
            source_nodes.append(SunburstNode(
                label=source,
                layer="source_title",
                count=sum(leaf.count for leaf in ordered),
                value=_inner_value(ordered),
                children=ordered,
            ))
        ordered_sources = _order(source_nodes)
        type_nodes.append(SunburstNode(
            label=doc_type,
            layer="document_type",
            count=sum(s.count for s in ordered_sources),
            value=_inner_value(ordered_sources),
            children=ordered_sources,
        ))

    ordered_types = _order(type_nodes)
    root = SunburstNode(
        label="all documents",
        layer="root",
        count=sum(t.count for t in ordered_types),
        value=_inner_value(ordered_types),
        children=ordered_types,
    )
    return SunburstResult(root=root, included_rows=included, excluded_rows=excluded)


def flatten(root: SunburstNode) -> dict[str, list]:
    """Parallel id/label/parent/value/color arrays for chart renderers.

    ``values`` carry document counts (slice size), ``colors`` the citation
    value of each node.
    """
    ids: list[str] = []
    labels: list[str] = []
    parents: list[str] = []
    values: list[int] = []
    colors: list[float] = []

    def walk(node: SunburstNode, parent_id: str):
        node_id = f"{parent_id}/{node.label}" if parent_id else node.label
        ids.append(node_id)
        labels.append(node.label)
        parents.append(parent_id)
        values.append(node.count)
        colors.append(node.value)
        for child in node.children:
            walk(child, node_id)

    walk(root, "")
    return {"ids": ids, "labels": labels, "parents": parents, "values": values, "colors": colors}

"""Association rules over semicolon-delimited columns, and the rule graph.

Transactions are the deduplicated, lowercased keyword sets of each row.
Frequent itemsets come from a level-wise Apriori search; rules A -> B are
emitted for every frequent itemset and non-empty proper subset A. The
"bidirectional" graph keeps 1-to-1 rules as directed edges, so an unordered
pair may carry one edge per direction, each with its own confidence.
"""
from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .errors import InvalidConfidence, InvalidSupport, NoMultivalueContent, UnknownColumn
from .ingest import Dataset, split_multivalue

Transaction = frozenset[str]


@dataclass(frozen=True)
class AssociationRule:
    antecedent: frozenset[str]
    consequent: frozenset[str]
    support: float
    confidence: float
    lift: float

    def key(self) -> tuple:
        return (tuple(sorted(self.antecedent)), tuple(sorted(self.consequent)))

    def to_json(self) -> dict:
        return {
            "antecedent": sorted(self.antecedent),
            "consequent": sorted(self.consequent),
            "support": self.support,
            "confidence": self.confidence,
            "lift": self.lift,
        }


@dataclass(frozen=True)
class RuleGraph:
    nodes: tuple[tuple[str, int], ...]            # (item, transaction frequency)
    edges: tuple[tuple[str, str, float, float, float], ...]  # from, to, support, confidence, lift

    def to_json(self) -> dict:
        return {
            "nodes": [{"id": item, "count": count} for item, count in self.nodes],
            "edges": [
                {"source": s, "target": t, "support": sup, "confidence": conf, "lift": lift}
                for s, t, sup, conf, lift in self.edges
            ],
        }

    def to_graphml(self) -> str:
        lines = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">',
            '  <key id="count" for="node" attr.name="count" attr.type="int"/>',
            '  <key id="support" for="edge" attr.name="support" attr.type="double"/>',
            '  <key id="confidence" for="edge" attr.name="confidence" attr.type="double"/>',
            '  <key id="lift" for="edge" attr.name="lift" attr.type="double"/>',
            '  <graph edgedefault="directed">',
        ]
        for item, count in self.nodes:
            lines.append(f'    <node id="{escape(item, {chr(34): "&quot;"})}">')
            lines.append(f'      <data key="count">{count}</data>')
            lines.append("    </node>")
        for s, t, sup, conf, lift in self.edges:
            s_esc = escape(s, {'"': "&quot;"})
            t_esc = escape(t, {'"': "&quot;"})
            lines.append(f'    <edge source="{s_esc}" target="{t_esc}">')
            lines.append(f'      <data key="support">{sup}</data>')
            lines.append(f'      <data key="confidence">{conf}</data>')
            lines.append(f'      <data key="lift">{lift}</data>')
            lines.append("    </edge>")
        lines += ["  </graph>", "</graphml>", ""]
        return "\n".join(lines)


def build_transactions(ds: Dataset, column: str) -> list[Transaction]:
    """Per-row item sets; rows with no items are dropped."""
    if column not in ds.column_names:
        raise UnknownColumn(column)
    transactions = []
    for value in ds.column(column):
        items = frozenset(item.lower() for item in split_multivalue(value))
        if items:
            transactions.append(items)
    if not transactions:
        raise NoMultivalueContent(f"column {column!r} yields no transactions")
    return transactions


def count_items(transactions: list[Transaction]) -> dict[str, int]:
    counts: dict[str, int] = {}
    for t in transactions:
        for item in t:
            counts[item] = counts.get(item, 0) + 1
    return counts


def mine_itemsets(transactions: list[Transaction], min_support: float) -> dict[frozenset[str], float]:
    """Apriori level-wise search for itemsets with support >= min_support."""
    if not 0.0 < min_support <= 1.0:
        raise InvalidSupport(f"min_support must be in (0, 1], got {min_support}")
    n = len(transactions)
    if n == 0:
        return {}

    frequent: dict[frozenset[str], float] = {}
    counts = count_items(transactions)
    level = {
        frozenset([item]): c / n
        for item, c in counts.items()
        if c / n >= min_support
    }
    size = 1
    while level:
        frequent.update(level)
        size += 1
        seen_items = sorted({item for itemset in level for item in itemset})
        prev = set(level)
        candidates = set()
        for itemset in level:
            for item in seen_items:
                if item not in itemset:
                    candidate = itemset | {item}
                    if len(candidate) == size and all(
                        frozenset(sub) in prev
                        for sub in itertools.combinations(candidate, size - 1)
                    ):
                        candidates.add(candidate)
        level = {}
        for candidate in candidates:
            hits = sum(1 for t in transactions if candidate <= t)
            support = hits / n
            if support >= min_support:
                level[candidate] = support
    return frequent


def derive_rules(itemsets: dict[frozenset[str], float], min_confidence: float) -> list[AssociationRule]:
    """All A -> B with confidence >= min_confidence, from frequent itemsets."""
    if not 0.0 < min_confidence <= 1.0:
        raise InvalidConfidence(f"min_confidence must be in (0, 1], got {min_confidence}")
    rules = []
    for itemset, support in itemsets.items():
        if len(itemset) < 2:
            continue
        items = sorted(itemset)
        for r in range(1, len(items)):
            for antecedent_items in itertools.combinations(items, r):
                antecedent = frozenset(antecedent_items)
                consequent = itemset - antecedent
                confidence = support / itemsets[antecedent]
                if confidence >= min_confidence:
                    rules.append(AssociationRule(
                        antecedent=antecedent,
                        consequent=consequent,
                        support=support,
                        confidence=confidence,
                        lift=confidence / itemsets[consequent],
                    ))
    rules.sort(key=lambda rule: (-rule.confidence, -rule.support, rule.key()))
    return rules


def build_graph(
    rules: list[AssociationRule],
    selected_nodes: set[str] | None = None,
    item_counts: dict[str, int] | None = None,
) -> RuleGraph:
    """Directed item graph from 1-to-1 rules, restricted to selected nodes.

    With ``selected_nodes`` set, an edge survives only when both endpoints
    are selected; selected items known to the vocabulary stay as isolated
    nodes even without edges.
    """
    item_counts = item_counts or {}
    vocabulary = set(item_counts)
    for rule in rules:
        vocabulary |= rule.antecedent | rule.consequent

    edges = []
    node_names: set[str] = set()
    for rule in rules:
        if len(rule.antecedent) != 1 or len(rule.consequent) != 1:
            continue
        source = next(iter(rule.antecedent))
        target = next(iter(rule.consequent))
        if selected_nodes is not None and not {source, target} <= selected_nodes:
            continue
        edges.append((source, target, rule.support, rule.confidence, rule.lift))
        node_names |= {source, target}

    if selected_nodes is not None:
        node_names |= {n for n in selected_nodes if n in vocabulary}

    edges.sort(key=lambda e: (-e[3], -e[2], e[0], e[1]))
    nodes = tuple((name, item_counts.get(name, 0)) for name in sorted(node_names))
    return RuleGraph(nodes=nodes, edges=tuple(edges))


def rules_to_csv(rules: list[AssociationRule]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["antecedent", "consequent", "support", "confidence", "lift"])
    for rule in rules:
        writer.writerow([
            "; ".join(sorted(rule.antecedent)),
            "; ".join(sorted(rule.consequent)),
            repr(rule.support),
            repr(rule.confidence),
            repr(rule.lift),
        ])
    return buf.getvalue()

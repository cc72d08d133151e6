"""Class-based TF-IDF: label clusters with their most distinctive terms.

Documents sharing a label are concatenated into one class document; the
weight of term t in class c is

    W(t, c) = tf(t, c) * ln(1 + A / f(t))

with tf the within-class count, f the count across all classes, and A the
average token count per class.
"""
from __future__ import annotations

import math

from ..errors import LabelLengthMismatch
from ..textprep import TokenizedCorpus


def ctfidf(corpus: TokenizedCorpus, labels) -> dict[int, list[tuple[str, float]]]:
    """Ranked (term, weight) lists per class, weight descending then term.

    Terms absent from a class have weight 0 and are omitted from its list.
    """
    labels = list(labels)
    if len(labels) != len(corpus.docs):
        raise LabelLengthMismatch(
            f"{len(labels)} labels for {len(corpus.docs)} documents"
        )

    classes = sorted(set(labels))
    tf: dict[int, dict[int, int]] = {c: {} for c in classes}
    f_t: dict[int, int] = {}
    total_tokens = 0
    for doc, label in zip(corpus.docs, labels):
        class_tf = tf[label]
        for w in doc:
            class_tf[w] = class_tf.get(w, 0) + 1
            f_t[w] = f_t.get(w, 0) + 1
            total_tokens += 1

    if not classes:
        return {}
    avg_per_class = total_tokens / len(classes)

    ranked: dict[int, list[tuple[str, float]]] = {}
    for c in classes:
        weighted = [
            (corpus.vocabulary[w], count * math.log(1.0 + avg_per_class / f_t[w]))
            for w, count in tf[c].items()
        ]
        weighted.sort(key=lambda item: (-item[1], item[0]))
        ranked[c] = weighted
    return ranked

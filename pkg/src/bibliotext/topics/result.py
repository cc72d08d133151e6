"""Fit output container shared by the LDA and BTM samplers."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import TopicModelParams


def rank_terms(values: np.ndarray, vocabulary: tuple[str, ...], top_n: int | None = None) -> list[tuple[str, float]]:
    """Sort terms by weight descending, breaking ties lexicographically."""
    order = sorted(range(len(vocabulary)), key=lambda w: (-values[w], vocabulary[w]))
    if top_n is not None:
        order = order[:top_n]
    return [(vocabulary[w], float(values[w])) for w in order]


@dataclass(frozen=True)
class TopicModelResult:
    model: str
    phi: np.ndarray        # K x V topic-term probabilities
    theta: np.ndarray      # D x K document-topic proportions
    top_terms: tuple[tuple[str, ...], ...]
    params: TopicModelParams
    log_likelihood: tuple[float, ...]
    vocabulary: tuple[str, ...]
    term_probabilities: tuple[float, ...]  # corpus-wide p(w), for relevance reranking

    def to_json(self) -> dict:
        return {
            "model": self.model,
            "params": self.params.to_json(),
            "vocabulary": list(self.vocabulary),
            "phi": self.phi.tolist(),
            "theta": self.theta.tolist(),
            "top_terms": [list(ts) for ts in self.top_terms],
            "log_likelihood": list(self.log_likelihood),
            "term_probabilities": list(self.term_probabilities),
        }

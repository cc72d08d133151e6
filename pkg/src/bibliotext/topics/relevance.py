"""Relevance-ranked topic terms: interpolate probability and lift.

relevance(w, k) = lambda * log phi[k, w] + (1 - lambda) * log(phi[k, w] / p[w])

lambda = 1 ranks by in-topic probability, lambda = 0 by lift. Terms with
zero in-topic probability are excluded.
"""
from __future__ import annotations

import math

from ..errors import InvalidLambda


def relevance_ranking(
    phi,
    term_probabilities,
    vocabulary: tuple[str, ...],
    lambda_relevance: float = 0.6,
) -> list[list[tuple[str, float]]]:
    """Per-topic (term, relevance) lists, sorted descending, ties by term."""
    if not 0.0 <= lambda_relevance <= 1.0:
        raise InvalidLambda(f"lambda must be in [0, 1], got {lambda_relevance}")

    lam = lambda_relevance
    ranked: list[list[tuple[str, float]]] = []
    for topic_row in phi:
        scored = []
        for w, p_topic in enumerate(topic_row):
            p_topic = float(p_topic)
            if p_topic <= 0.0:
                continue
            log_p = math.log(p_topic)
            score = lam * log_p + (1.0 - lam) * (log_p - math.log(term_probabilities[w]))
            scored.append((vocabulary[w], score))
        scored.sort(key=lambda item: (-item[1], item[0]))
        ranked.append(scored)
    return ranked

"""Biterm topic model: Gibbs sampling over word co-occurrence pairs.

The context window is the whole document, which suits the short texts
(titles, keyword strings, brief abstracts) this model targets. Documents
contribute every unordered token pair by position; document-topic
proportions are recovered afterwards by averaging per-biterm posteriors.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from ..errors import NoBiterms
from ..textprep import TokenizedCorpus
from .params import TopicModelParams
from .result import TopicModelResult, rank_terms


@dataclass(frozen=True)
class Biterm:
    """Unordered token-id pair with canonical ordering w1 <= w2."""

    w1: int
    w2: int

    def __post_init__(self):
        if self.w1 > self.w2:
            lo, hi = self.w2, self.w1
            object.__setattr__(self, "w1", lo)
            object.__setattr__(self, "w2", hi)


def btm_extract_biterms(corpus: TokenizedCorpus) -> list[tuple[int, Biterm]]:
    """All within-document unordered pairs, tagged with their document index."""
    out: list[tuple[int, Biterm]] = []
    for d, doc in enumerate(corpus.docs):
        n = len(doc)
        for i in range(n):
            for j in range(i + 1, n):
                a, b = doc[i], doc[j]
                out.append((d, Biterm(min(a, b), max(a, b))))
    return out


def _btm_log_likelihood(n_wk, n_k, alpha, beta, k, v, n_biterms) -> float:
    n_wk_arr = np.asarray(n_wk, dtype=np.float64)
    n_k_arr = np.asarray(n_k, dtype=np.float64)
    word_part = (
        k * (gammaln(v * beta) - v * gammaln(beta))
        + gammaln(n_wk_arr + beta).sum()
        - gammaln(2.0 * n_k_arr + v * beta).sum()
    )
    topic_part = (
        gammaln(k * alpha) - k * gammaln(alpha)
        + gammaln(n_k_arr + alpha).sum()
        - gammaln(n_biterms + k * alpha)
    )
    return float(word_part + topic_part)


def btm_fit(
    biterms: list[tuple[int, Biterm]],
    params: TopicModelParams,
    n_docs: int,
    vocabulary: tuple[str, ...],
    term_frequencies: tuple[int, ...] | None = None,
) -> TopicModelResult:
    """Fit the biterm model; deterministic for a fixed seed.

    ``theta`` rows for documents with no biterms are uniform by convention.
    """
    if not biterms:
        raise NoBiterms("every document has fewer than two tokens")
    v = len(vocabulary)
    k = params.k
    alpha, beta = params.alpha, params.beta
    v_beta = v * beta
    rng = random.Random(params.seed)

    n_k = [0] * k
    n_wk = [[0] * v for _ in range(k)]
    z_assign = [0] * len(biterms)
    for idx, (_, bt) in enumerate(biterms):
        z = rng.randrange(k)
        z_assign[idx] = z
        n_k[z] += 1
        n_wk[z][bt.w1] += 1
        n_wk[z][bt.w2] += 1

    weights = [0.0] * k
    trace = []
    nb = len(biterms)
    for _ in range(params.iterations):
        for idx, (_, bt) in enumerate(biterms):
            z = z_assign[idx]
            n_k[z] -= 1
            n_wk[z][bt.w1] -= 1
            n_wk[z][bt.w2] -= 1

            total = 0.0
            for t in range(k):
                denom = 2.0 * n_k[t] + v_beta
                total += (n_k[t] + alpha) * (n_wk[t][bt.w1] + beta) * (n_wk[t][bt.w2] + beta) / (denom * denom)
                weights[t] = total
            u = rng.random() * total
            z_new = 0
            while weights[z_new] < u:
                z_new += 1

            z_assign[idx] = z_new
            n_k[z_new] += 1
            n_wk[z_new][bt.w1] += 1
            n_wk[z_new][bt.w2] += 1
        trace.append(_btm_log_likelihood(n_wk, n_k, alpha, beta, k, v, nb))

    n_wk_arr = np.asarray(n_wk, dtype=np.float64)
    n_k_arr = np.asarray(n_k, dtype=np.float64)
    phi = (n_wk_arr + beta) / (2.0 * n_k_arr + v_beta)[:, None]
    p_topic = (n_k_arr + alpha) / (nb + k * alpha)

    theta = np.full((n_docs, k), 1.0 / k)
    doc_weights: dict[int, np.ndarray] = {}
    doc_counts: dict[int, int] = {}
    for d, bt in biterms:
        posterior = p_topic * phi[:, bt.w1] * phi[:, bt.w2]
        posterior /= posterior.sum()
        doc_weights[d] = doc_weights.get(d, 0.0) + posterior
        doc_counts[d] = doc_counts.get(d, 0) + 1
    for d, acc in doc_weights.items():
        theta[d] = acc / doc_counts[d]

    if term_frequencies is not None and sum(term_frequencies) > 0:
        total_tokens = sum(term_frequencies)
        p_w = tuple(c / total_tokens for c in term_frequencies)
    else:
        counts = n_wk_arr.sum(axis=0)
        p_w = tuple((counts / counts.sum()).tolist()) if counts.sum() else tuple([0.0] * v)

    top = tuple(
        tuple(term for term, _ in rank_terms(phi[t], vocabulary, params.top_n))
        for t in range(k)
    )
    return TopicModelResult(
        model="btm", phi=phi, theta=theta, top_terms=top, params=params,
        log_likelihood=tuple(trace), vocabulary=vocabulary,
        term_probabilities=p_w,
    )


def fit_btm_corpus(corpus: TokenizedCorpus, params: TopicModelParams) -> TopicModelResult:
    """Extract biterms from ``corpus`` and fit."""
    return btm_fit(
        btm_extract_biterms(corpus),
        params,
        n_docs=len(corpus.docs),
        vocabulary=corpus.vocabulary,
        term_frequencies=corpus.term_frequencies,
    )

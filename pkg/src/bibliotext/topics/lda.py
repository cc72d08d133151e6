"""Latent Dirichlet allocation via collapsed Gibbs sampling.

Single-threaded sampler over plain Python count lists (fast enough for
workbench-scale corpora and bit-deterministic for a fixed seed); matrices
are assembled with numpy only after the final sweep. The point estimate
comes from the final sampler state, not an average over samples.
"""
from __future__ import annotations

import random
import warnings

import numpy as np
from scipy.special import gammaln

from ..errors import EmptyCorpus
from ..textprep import TokenizedCorpus
from .params import TopicModelParams
from .result import TopicModelResult, rank_terms


def _joint_log_likelihood(n_dk, n_kw, n_k, doc_lengths, alpha, beta, k, v) -> float:
    """Collapsed joint log p(w, z) up to assignment-independent constants."""
    n_kw_arr = np.asarray(n_kw, dtype=np.float64)
    n_dk_arr = np.asarray(n_dk, dtype=np.float64)
    n_k_arr = np.asarray(n_k, dtype=np.float64)
    lengths = np.asarray(doc_lengths, dtype=np.float64)

    word_part = (
        k * (gammaln(v * beta) - v * gammaln(beta))
        + gammaln(n_kw_arr + beta).sum()
        - gammaln(n_k_arr + v * beta).sum()
    )
    doc_part = (
        len(doc_lengths) * (gammaln(k * alpha) - k * gammaln(alpha))
        + gammaln(n_dk_arr + alpha).sum()
        - gammaln(lengths + k * alpha).sum()
    )
    return float(word_part + doc_part)


def lda_fit(corpus: TokenizedCorpus, params: TopicModelParams) -> TopicModelResult:
    """Fit LDA; deterministic for a fixed seed."""
    docs = corpus.docs
    v = corpus.vocab_size
    k = params.k
    if not any(docs):
        raise EmptyCorpus("no non-empty documents")
    if v < k:
        warnings.warn(f"vocabulary size {v} is smaller than k={k}", stacklevel=2)

    rng = random.Random(params.seed)
    alpha, beta = params.alpha, params.beta
    v_beta = v * beta

    n_dk = [[0] * k for _ in docs]
    n_kw = [[0] * v for _ in range(k)]
    n_k = [0] * k
    doc_lengths = [len(d) for d in docs]
    assignments = [[0] * len(d) for d in docs]

    for d, doc in enumerate(docs):
        for i, w in enumerate(doc):
            z = rng.randrange(k)
            assignments[d][i] = z
            n_dk[d][z] += 1
            n_kw[z][w] += 1
            n_k[z] += 1

    weights = [0.0] * k
    trace = []
    for _ in range(params.iterations):
        for d, doc in enumerate(docs):
            row = n_dk[d]
            z_row = assignments[d]
            for i, w in enumerate(doc):
                z = z_row[i]
                row[z] -= 1
                n_kw[z][w] -= 1
                n_k[z] -= 1

                total = 0.0
                for t in range(k):
                    total += (row[t] + alpha) * (n_kw[t][w] + beta) / (n_k[t] + v_beta)
                    weights[t] = total
                u = rng.random() * total
                z_new = 0
                while weights[z_new] < u:
                    z_new += 1

                z_row[i] = z_new
                row[z_new] += 1
                n_kw[z_new][w] += 1
                n_k[z_new] += 1
        trace.append(_joint_log_likelihood(n_dk, n_kw, n_k, doc_lengths, alpha, beta, k, v))

    n_kw_arr = np.asarray(n_kw, dtype=np.float64)
    n_k_arr = np.asarray(n_k, dtype=np.float64)
    phi = (n_kw_arr + beta) / (n_k_arr + v_beta)[:, None]

    n_dk_arr = np.asarray(n_dk, dtype=np.float64)
    lengths = np.asarray(doc_lengths, dtype=np.float64)
    theta = (n_dk_arr + alpha) / (lengths + k * alpha)[:, None]

    total_tokens = sum(corpus.term_frequencies)
    p_w = tuple(c / total_tokens for c in corpus.term_frequencies)
    top = tuple(
        tuple(term for term, _ in rank_terms(phi[t], corpus.vocabulary, params.top_n))
        for t in range(k)
    )
    return TopicModelResult(
        model="lda", phi=phi, theta=theta, top_terms=top, params=params,
        log_likelihood=tuple(trace), vocabulary=corpus.vocabulary,
        term_probabilities=p_w,
    )

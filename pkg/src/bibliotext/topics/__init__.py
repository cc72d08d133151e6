"""Topic modeling engines and term-ranking utilities."""
from __future__ import annotations

from .btm import Biterm, btm_extract_biterms, btm_fit, fit_btm_corpus
from .cluster import cluster_embeddings, load_embeddings
from .ctfidf import ctfidf
from .lda import lda_fit
from .params import TopicModelParams
from .relevance import relevance_ranking
from .result import TopicModelResult

__all__ = [
    "TopicModelParams",
    "TopicModelResult",
    "lda_fit",
    "Biterm",
    "btm_extract_biterms",
    "btm_fit",
    "fit_btm_corpus",
    "cluster_embeddings",
    "load_embeddings",
    "ctfidf",
    "relevance_ranking",
]

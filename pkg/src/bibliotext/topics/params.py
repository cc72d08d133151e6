"""Hyperparameters shared by the topic model fits."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvalidParams


@dataclass(frozen=True)
class TopicModelParams:
    """Gibbs sampling settings.

    ``k >= 1`` is accepted here so degenerate single-topic fits remain
    usable programmatically; the HTTP API and CLI require ``k >= 2``.
    """

    k: int = 2
    alpha: float = 0.1
    beta: float = 0.01
    iterations: int = 500
    seed: int = 0
    top_n: int = 10
    lambda_relevance: float = 0.6

    def __post_init__(self):
        if self.k < 1:
            raise InvalidParams("k must be >= 1")
        if self.alpha <= 0:
            raise InvalidParams("alpha must be > 0")
        if self.beta <= 0:
            raise InvalidParams("beta must be > 0")
        if self.iterations < 1:
            raise InvalidParams("iterations must be >= 1")
        if not -(2**63) <= self.seed < 2**64:
            raise InvalidParams("seed must fit in 64 bits")
        if self.top_n < 1:
            raise InvalidParams("top_n must be >= 1")
        if not 0.0 <= self.lambda_relevance <= 1.0:
            raise InvalidParams("lambda_relevance must be in [0, 1]")

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "alpha": self.alpha,
            "beta": self.beta,
            "iterations": self.iterations,
            "seed": self.seed,
            "top_n": self.top_n,
            "lambda_relevance": self.lambda_relevance,
        }

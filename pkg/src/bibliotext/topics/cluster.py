"""K-means over externally supplied document embeddings.

Embedding generation is out of scope: vectors arrive via a sidecar CSV
(``row_index,v0,v1,...``) keyed by dataset row index. Clustering is
k-means++ seeded from a deterministic RNG with plain Lloyd iterations, so
a fixed seed reproduces labels exactly.
"""
from __future__ import annotations

import csv
import io

import numpy as np

from ..errors import DimensionMismatch, TooFewDocs

MAX_ITERATIONS = 300
RELATIVE_TOLERANCE = 1e-6


def load_embeddings(text: str) -> tuple[list[int], np.ndarray]:
    """Parse a sidecar CSV into (row indices, D x dim matrix)."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if not header or header[0] != "row_index":
        raise DimensionMismatch("embeddings CSV must start with a 'row_index' column")
    dim = len(header) - 1
    if dim < 1:
        raise DimensionMismatch("embeddings CSV has no vector columns")
    indices: list[int] = []
    rows: list[list[float]] = []
    for row in reader:
        if not row:
            continue
        if len(row) != dim + 1:
            raise DimensionMismatch(f"embedding row for index {row[0]} has {len(row) - 1} values, expected {dim}")
        indices.append(int(row[0]))
        rows.append([float(x) for x in row[1:]])
    return indices, np.asarray(rows, dtype=np.float64)


def _kmeanspp_init(vectors: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = vectors.shape[0]
    centers = np.empty((k, vectors.shape[1]))
    first = int(rng.integers(n))
    centers[0] = vectors[first]
    dist_sq = ((vectors - centers[0]) ** 2).sum(axis=1)
    for c in range(1, k):
        total = dist_sq.sum()
        if total <= 0.0:
            idx = int(rng.integers(n))  # all remaining points coincide
        else:
            idx = int(np.searchsorted(np.cumsum(dist_sq), rng.random() * total))
            idx = min(idx, n - 1)
        centers[c] = vectors[idx]
        dist_sq = np.minimum(dist_sq, ((vectors - centers[c]) ** 2).sum(axis=1))
    return centers


def cluster_embeddings(vectors: np.ndarray, k: int, seed: int = 0) -> np.ndarray:
    """Cluster D x dim ``vectors`` into ``k`` groups; returns D labels."""
    vectors = np.asarray(vectors, dtype=np.float64)
    if vectors.ndim != 2:
        raise DimensionMismatch("vectors must form a 2-D matrix")
    n = vectors.shape[0]
    if k < 1:
        raise TooFewDocs("k must be >= 1")
    if n < k:
        raise TooFewDocs(f"{n} vectors cannot form {k} clusters")

    rng = np.random.default_rng(seed)
    centers = _kmeanspp_init(vectors, k, rng)
    reseeded = [False] * k
    previous_inertia = np.inf
    labels = np.zeros(n, dtype=np.int64)

    for _ in range(MAX_ITERATIONS):
        sq_dists = ((vectors[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        labels = sq_dists.argmin(axis=1)
        point_err = sq_dists[np.arange(n), labels]
        inertia = float(point_err.sum())

        for c in range(k):
            members = labels == c
            if members.any():
                centers[c] = vectors[members].mean(axis=0)
            elif not reseeded[c]:
                # one-shot rescue: move the empty cluster onto the worst-fit point
                centers[c] = vectors[int(point_err.argmax())]
                reseeded[c] = True

        if previous_inertia < np.inf:
            denom = previous_inertia if previous_inertia > 0 else 1.0
            if abs(previous_inertia - inertia) / denom < RELATIVE_TOLERANCE:
                break
        previous_inertia = inertia

    sq_dists = ((vectors[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
    return sq_dists.argmin(axis=1)

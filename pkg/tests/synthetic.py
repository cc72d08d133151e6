"""Synthetic corpus generators used as recovery oracles."""
from __future__ import annotations

import random

from bibliotext.textprep import TokenizedCorpus


def two_block_corpus(
    seed: int,
    docs_per_block: int = 100,
    vocab_per_block: int = 50,
    doc_len: int = 20,
) -> tuple[TokenizedCorpus, list[int]]:
    """Two groups of documents drawing from disjoint vocabularies.

    The generating block index is the ground-truth label; any decent
    two-topic fit must recover it up to label permutation.
    """
    rng = random.Random(seed)
    vocabulary = tuple(
        [f"alpha{i}" for i in range(vocab_per_block)]
        + [f"beta{i}" for i in range(vocab_per_block)]
    )
    docs: list[tuple[int, ...]] = []
    labels: list[int] = []
    for block in (0, 1):
        offset = block * vocab_per_block
        for _ in range(docs_per_block):
            docs.append(tuple(offset + rng.randrange(vocab_per_block) for _ in range(doc_len)))
            labels.append(block)

    frequencies = [0] * len(vocabulary)
    for doc in docs:
        for w in doc:
            frequencies[w] += 1
    corpus = TokenizedCorpus(
        docs=tuple(docs),
        vocabulary=vocabulary,
        doc_ids=tuple(range(len(docs))),
        term_frequencies=tuple(frequencies),
    )
    return corpus, labels


def purity_two_labels(predicted: list[int], truth: list[int]) -> float:
    """Best agreement over the two label permutations."""
    agree = sum(1 for p, t in zip(predicted, truth) if p == t)
    return max(agree, len(truth) - agree) / len(truth)


def make_corpus(token_docs: list[list[str]]) -> TokenizedCorpus:
    """Build a TokenizedCorpus directly from token lists."""
    vocab_ids: dict[str, int] = {}
    docs = []
    counts: list[int] = []
    for doc in token_docs:
        ids = []
        for token in doc:
            idx = vocab_ids.get(token)
            if idx is None:
                idx = len(vocab_ids)
                vocab_ids[token] = idx
                counts.append(0)
            counts[idx] += 1
            ids.append(idx)
        docs.append(tuple(ids))
    return TokenizedCorpus(
        docs=tuple(docs),
        vocabulary=tuple(vocab_ids),
        doc_ids=tuple(range(len(docs))),
        term_frequencies=tuple(counts),
    )

"""Analysis registry shared by the CLI and the HTTP service.

Each runner takes a Dataset plus a plain JSON params object, validates the
params, and returns an :class:`AnalysisOutput` bundling the JSON document
and CSV artifacts. Both frontends serialize through :func:`dump_json`, so
equal inputs, params, and seeds produce byte-identical files.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from . import assocnet, keystem, sunburst
from .capability import check_capabilities
from .errors import InvalidParams
from .ingest import ABSTRACT, Dataset, to_canonical_csv
from .textprep import PrepOptions, build_corpus
from .topics import (
    TopicModelParams,
    cluster_embeddings,
    ctfidf,
    fit_btm_corpus,
    lda_fit,
    load_embeddings,
    relevance_ranking,
)

ANALYSES = ("keywords_stem", "topic_lda", "topic_btm", "topic_ctfidf", "network", "sunburst")

# capability gate consulted before a job may run
CAPABILITY_FOR = {
    "keywords_stem": "keywords_stem",
    "topic_lda": "topic_modeling",
    "topic_btm": "topic_modeling",
    "topic_ctfidf": "topic_modeling",
    "network": "bidirectional_network",
    "sunburst": "sunburst",
}


@dataclass
class AnalysisOutput:
    result: dict
    csv_artifacts: dict[str, str] = field(default_factory=dict)  # filename -> content
    primary_csv: str = "result.csv"

    def result_csv(self) -> str:
        return self.csv_artifacts[self.primary_csv]


def dump_json(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()


def _expect(params: dict, key: str, kind, default):
    value = params.get(key, default)
    if value is None:
        return None
    try:
        if kind is int and isinstance(value, bool):
            raise TypeError
        return kind(value)
    except (TypeError, ValueError):
        raise InvalidParams(f"parameter {key!r} must be {kind.__name__}")


def _prep_options(params: dict, default_normalization: str = "lemmatize") -> PrepOptions:
    extra = params.get("extra_stopwords", [])
    if not isinstance(extra, (list, tuple)):
        raise InvalidParams("extra_stopwords must be a list of strings")
    try:
        return PrepOptions(
            lowercase=bool(params.get("lowercase", True)),
            remove_punctuation=bool(params.get("remove_punctuation", True)),
            remove_copyright=bool(params.get("remove_copyright", False)),
            extra_stopwords=frozenset(str(w) for w in extra),
            normalization=str(params.get("normalization", default_normalization)),
        )
    except ValueError as exc:
        raise InvalidParams(str(exc))


def _topic_params(params: dict, min_k: int = 2) -> TopicModelParams:
    k = _expect(params, "k", int, 2)
    if k < min_k:
        raise InvalidParams(f"k must be >= {min_k}")
    return TopicModelParams(
        k=k,
        alpha=_expect(params, "alpha", float, 0.1),
        beta=_expect(params, "beta", float, 0.01),
        iterations=_expect(params, "iterations", int, 500),
        seed=_expect(params, "seed", int, 0),
        top_n=_expect(params, "top_n", int, 10),
        lambda_relevance=_expect(params, "lambda_relevance", float, 0.6),
    )


def _text_column(ds: Dataset, params: dict) -> str:
    usable = check_capabilities(ds)["topic_modeling"].usable_columns
    column = params.get("column")
    if column is None:
        if not usable:
            raise InvalidParams("no usable text column")
        return ABSTRACT if ABSTRACT in usable else usable[0]
    if column not in usable:
        raise InvalidParams(f"column {column!r} is not a usable text column")
    return str(column)


def _matrix_csv(matrix: np.ndarray, row_label: str, columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([row_label] + columns)
    for i, row in enumerate(matrix.tolist()):
        writer.writerow([i] + [repr(x) for x in row])
    return buf.getvalue()


def run_keywords_stem(ds: Dataset, params: dict) -> AnalysisOutput:
    method = str(params.get("method", "lemmatize"))
    if method not in ("lemmatize", "stem"):
        raise InvalidParams("method must be 'lemmatize' or 'stem'")
    columns = params.get("columns")
    if columns is not None and (
        not isinstance(columns, (list, tuple)) or not all(isinstance(c, str) for c in columns)
    ):
        raise InvalidParams("columns must be a list of column names")
    out_ds, mapping = keystem.stem_keywords(ds, method=method, columns=list(columns) if columns else None)
    result_csv = to_canonical_csv(out_ds)
    reader = csv.reader(io.StringIO(result_csv))
    header = next(reader)
    rows = list(reader)
    return AnalysisOutput(
        result={
            "analysis": "keywords_stem",
            "method": method,
            "columns": header,
            "rows": rows,
            "keyword_map": [list(p) for p in mapping.pairs],
        },
        csv_artifacts={"result.csv": result_csv, "keywords_map.csv": mapping.to_csv()},
    )


def _topic_output(name: str, result, column: str) -> AnalysisOutput:
    relevance = relevance_ranking(
        result.phi, result.term_probabilities, result.vocabulary,
        result.params.lambda_relevance,
    )
    doc = result.to_json()
    doc["analysis"] = name
    doc["column"] = column
    doc["relevance"] = [
        [[term, score] for term, score in topic[: result.params.top_n]]
        for topic in relevance
    ]
    topics_cols = [f"topic_{t}" for t in range(result.params.k)]
    return AnalysisOutput(
        result=doc,
        csv_artifacts={
            "result.csv": _matrix_csv(result.phi.T, "term_id", topics_cols),
            "theta.csv": _matrix_csv(result.theta, "doc_id", topics_cols),
        },
    )


def run_topic_lda(ds: Dataset, params: dict) -> AnalysisOutput:
    column = _text_column(ds, params)
    corpus = build_corpus(ds, column, _prep_options(params))
    result = lda_fit(corpus, _topic_params(params))
    return _topic_output("topic_lda", result, column)


def run_topic_btm(ds: Dataset, params: dict) -> AnalysisOutput:
    column = _text_column(ds, params)
    corpus = build_corpus(ds, column, _prep_options(params))
    result = fit_btm_corpus(corpus, _topic_params(params))
    return _topic_output("topic_btm", result, column)


def run_topic_ctfidf(ds: Dataset, params: dict) -> AnalysisOutput:
    column = _text_column(ds, params)
    embeddings_csv = params.get("embeddings_csv")
    if not isinstance(embeddings_csv, str) or not embeddings_csv.strip():
        raise InvalidParams("embeddings_csv (sidecar CSV content) is required")
    k = _expect(params, "k", int, 2)
    if k < 1:
        raise InvalidParams("k must be >= 1")
    seed = _expect(params, "seed", int, 0)
    top_n = _expect(params, "top_n", int, 10)

    indices, vectors = load_embeddings(embeddings_csv)
    if sorted(indices) != list(range(ds.row_count)):
        raise InvalidParams(
            f"embeddings must cover row indices 0..{ds.row_count - 1} exactly"
        )
    order = np.argsort(indices)
    labels = cluster_embeddings(vectors[order], k, seed=seed)

    corpus = build_corpus(ds, column, _prep_options(params))
    ranked = ctfidf(corpus, labels.tolist())

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["cluster", "term", "weight"])
    clusters = []
    for label in sorted(ranked):
        terms = ranked[label][:top_n]
        clusters.append({
            "label": int(label),
            "size": int((labels == label).sum()),
            "terms": [[term, weight] for term, weight in terms],
        })
        for term, weight in terms:
            writer.writerow([label, term, repr(weight)])

    return AnalysisOutput(
        result={
            "analysis": "topic_ctfidf",
            "column": column,
            "k": k,
            "seed": seed,
            "labels": [int(x) for x in labels],
            "clusters": clusters,
        },
        csv_artifacts={"result.csv": buf.getvalue()},
    )


def run_network(ds: Dataset, params: dict) -> AnalysisOutput:
    usable = check_capabilities(ds)["bidirectional_network"].usable_columns
    column = params.get("column")
    if column is None:
        if not usable:
            raise InvalidParams("no multivalue column available")
        column = usable[0]
    elif column not in usable:
        raise InvalidParams(f"column {column!r} is not a multivalue column")

    min_support = _expect(params, "min_support", float, 0.02)
    min_confidence = _expect(params, "min_confidence", float, 0.3)
    selected = params.get("selected_nodes")
    if selected is not None:
        if not isinstance(selected, (list, tuple)):
            raise InvalidParams("selected_nodes must be a list")
        selected = {str(s).lower() for s in selected}

    transactions = assocnet.build_transactions(ds, column)
    itemsets = assocnet.mine_itemsets(transactions, min_support)
    rules = assocnet.derive_rules(itemsets, min_confidence)
    graph = assocnet.build_graph(rules, selected_nodes=selected,
                                 item_counts=assocnet.count_items(transactions))
    return AnalysisOutput(
        result={
            "analysis": "network",
            "column": column,
            "min_support": min_support,
            "min_confidence": min_confidence,
            "selected_nodes": sorted(selected) if selected is not None else None,
            "transaction_count": len(transactions),
            "rules": [r.to_json() for r in rules],
            "graph": graph.to_json(),
        },
        csv_artifacts={
            "result.csv": assocnet.rules_to_csv(rules),
            "graph.graphml": graph.to_graphml(),
        },
    )


def run_sunburst(ds: Dataset, params: dict) -> AnalysisOutput:
    year_min = _expect(params, "year_min", int, None)
    year_max = _expect(params, "year_max", int, None)
    year_range = None
    if (year_min is None) != (year_max is None):
        raise InvalidParams("year_min and year_max must be given together")
    if year_min is not None:
        if year_min > year_max:
            raise InvalidParams("year_min must be <= year_max")
        year_range = (year_min, year_max)

    result = sunburst.build_sunburst(ds, year_range=year_range)
    doc = result.to_json()
    doc["analysis"] = "sunburst"

    flat = doc["flat"]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", "label", "parent", "count", "value"])
    for i in range(len(flat["ids"])):
        writer.writerow([
            flat["ids"][i], flat["labels"][i], flat["parents"][i],
            flat["values"][i], repr(flat["colors"][i]),
        ])
    return AnalysisOutput(result=doc, csv_artifacts={"result.csv": buf.getvalue()})


RUNNERS = {
    "keywords_stem": run_keywords_stem,
    "topic_lda": run_topic_lda,
    "topic_btm": run_topic_btm,
    "topic_ctfidf": run_topic_ctfidf,
    "network": run_network,
    "sunburst": run_sunburst,
}


def validate_params(analysis: str, params: dict) -> None:
    """Dataset-independent parameter validation, run before a job queues.

    Column existence and other data-dependent checks stay with the runner.
    """
    if analysis not in RUNNERS:
        raise InvalidParams(f"unknown analysis: {analysis!r}")
    if not isinstance(params, dict):
        raise InvalidParams("params must be a JSON object")

    if analysis == "keywords_stem":
        method = params.get("method", "lemmatize")
        if method not in ("lemmatize", "stem"):
            raise InvalidParams("method must be 'lemmatize' or 'stem'")
        columns = params.get("columns")
        if columns is not None and (
            not isinstance(columns, (list, tuple)) or not all(isinstance(c, str) for c in columns)
        ):
            raise InvalidParams("columns must be a list of column names")
    elif analysis in ("topic_lda", "topic_btm"):
        _topic_params(params, min_k=2)
        _prep_options(params)
    elif analysis == "topic_ctfidf":
        if _expect(params, "k", int, 2) < 1:
            raise InvalidParams("k must be >= 1")
        _expect(params, "seed", int, 0)
        if _expect(params, "top_n", int, 10) < 1:
            raise InvalidParams("top_n must be >= 1")
        embeddings_csv = params.get("embeddings_csv")
        if not isinstance(embeddings_csv, str) or not embeddings_csv.strip():
            raise InvalidParams("embeddings_csv (sidecar CSV content) is required")
        _prep_options(params)
    elif analysis == "network":
        min_support = _expect(params, "min_support", float, 0.02)
        if not 0.0 < min_support <= 1.0:
            raise InvalidParams("min_support must be in (0, 1]")
        min_confidence = _expect(params, "min_confidence", float, 0.3)
        if not 0.0 < min_confidence <= 1.0:
            raise InvalidParams("min_confidence must be in (0, 1]")
        selected = params.get("selected_nodes")
        if selected is not None and not isinstance(selected, (list, tuple)):
            raise InvalidParams("selected_nodes must be a list")
    elif analysis == "sunburst":
        year_min = _expect(params, "year_min", int, None)
        year_max = _expect(params, "year_max", int, None)
        if (year_min is None) != (year_max is None):
            raise InvalidParams("year_min and year_max must be given together")
        if year_min is not None and year_min > year_max:
            raise InvalidParams("year_min must be <= year_max")


def run_analysis(ds: Dataset, analysis: str, params: dict) -> AnalysisOutput:
    validate_params(analysis, params)
    return RUNNERS[analysis](ds, params)

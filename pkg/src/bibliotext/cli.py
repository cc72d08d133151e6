"""Batch command-line interface over the analysis engine.

Exit codes: 0 success, 2 parse failure, 3 analysis not eligible for the
input, 4 invalid parameters. Flags carry the same names as the HTTP API
parameters, and result.json files are byte-identical to service results
for equal inputs, parameters, and seeds.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .analyses import CAPABILITY_FOR, dump_json, run_analysis
from .capability import check_capabilities
from .errors import BibliotextError, IngestError, InvalidParams, NotEligible
from .ingest import detect_source, parse_dataset

EXIT_PARSE = 2
EXIT_INELIGIBLE = 3
EXIT_PARAMS = 4


def _load_dataset(path: str):
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        click.echo(f"cannot read {path}: {exc}", err=True)
        sys.exit(EXIT_PARSE)
    try:
        kind = detect_source(raw, Path(path).name)
        return parse_dataset(raw, kind)
    except IngestError as exc:
        click.echo(f"parse failure: {exc}", err=True)
        sys.exit(EXIT_PARSE)


def _gate(ds, analysis: str):
    report = check_capabilities(ds)
    gate = report[CAPABILITY_FOR[analysis]]
    if not gate.eligible:
        click.echo(
            f"{analysis} is not eligible; missing: {', '.join(gate.missing_fields)}",
            err=True,
        )
        sys.exit(EXIT_INELIGIBLE)


def _execute(path: str, analysis: str, params: dict, out: str, as_json: bool):
    ds = _load_dataset(path)
    _gate(ds, analysis)
    try:
        output = run_analysis(ds, analysis, params)
    except InvalidParams as exc:
        click.echo(f"invalid params: {exc}", err=True)
        sys.exit(EXIT_PARAMS)
    except NotEligible as exc:
        click.echo(str(exc), err=True)
        sys.exit(EXIT_INELIGIBLE)
    except BibliotextError as exc:
        click.echo(f"analysis failed: {type(exc).__name__}: {exc}", err=True)
        sys.exit(1)

    out_dir = Path(out)
    out_dir.mkdir(parents=True, exist_ok=True)
    result_path = out_dir / "result.json"
    result_path.write_bytes(dump_json(output.result))
    click.echo(f"wrote {result_path}")
    for name, content in output.csv_artifacts.items():
        artifact = out_dir / name
        artifact.write_text(content, encoding="utf-8")
        click.echo(f"wrote {artifact}")
    if as_json:
        click.echo(dump_json(output.result).decode())


@click.group()
@click.version_option(package_name="bibliotext")
def main():
    """Bibliometric text-analysis workbench."""


@main.command()
@click.argument("input_path", metavar="INPUT")
@click.option("--json", "as_json", is_flag=True, help="Emit the capability report as JSON.")
def check(input_path: str, as_json: bool):
    """File Checker: report which analyses INPUT supports."""
    ds = _load_dataset(input_path)
    report = check_capabilities(ds)
    if as_json:
        click.echo(dump_json({
            "source": ds.source.value,
            "row_count": ds.row_count,
            "capabilities": report.to_json(),
        }).decode())
        return
    click.echo(f"source: {ds.source.value}   rows: {ds.row_count}")
    header = f"{'analysis':<24}{'eligible':<10}missing / usable"
    click.echo(header)
    click.echo("-" * len(header))
    for name, cap in report.analyses.items():
        detail = (
            ", ".join(cap.missing_fields) if not cap.eligible
            else ", ".join(cap.usable_columns)
        )
        click.echo(f"{name:<24}{'yes' if cap.eligible else 'no':<10}{detail}")


def _common_run_options(fn):
    fn = click.option("--out", default="out", show_default=True, help="Output directory.")(fn)
    fn = click.option("--json", "as_json", is_flag=True, help="Also print result JSON to stdout.")(fn)
    return fn


def _prep_options_flags(fn):
    fn = click.option("--remove-copyright", is_flag=True, help="Drop sentences carrying copyright statements.")(fn)
    fn = click.option("--extra-stopword", "extra_stopwords", multiple=True, help="Additional stopword (repeatable).")(fn)
    fn = click.option("--normalization", type=click.Choice(["none", "lemmatize", "stem"]), default="lemmatize", show_default=True)(fn)
    return fn


def _topic_flags(fn):
    fn = click.option("--column", default=None, help="Text column to model (default: best usable).")(fn)
    fn = click.option("--k", default=2, show_default=True, help="Topic count.")(fn)
    fn = click.option("--alpha", default=0.1, show_default=True)(fn)
    fn = click.option("--beta", default=0.01, show_default=True)(fn)
    fn = click.option("--iterations", default=500, show_default=True)(fn)
    fn = click.option("--seed", default=0, show_default=True)(fn)
    fn = click.option("--top-n", default=10, show_default=True)(fn)
    fn = click.option("--lambda-relevance", default=0.6, show_default=True)(fn)
    return fn


def _topic_param_dict(column, k, alpha, beta, iterations, seed, top_n,
                      lambda_relevance, normalization, remove_copyright, extra_stopwords) -> dict:
    params = {
        "k": k, "alpha": alpha, "beta": beta, "iterations": iterations,
        "seed": seed, "top_n": top_n, "lambda_relevance": lambda_relevance,
        "normalization": normalization,
        "remove_copyright": remove_copyright,
        "extra_stopwords": list(extra_stopwords),
    }
    if column:
        params["column"] = column
    return params


@main.command()
@click.argument("input_path", metavar="INPUT")
@click.option("--method", type=click.Choice(["lemmatize", "stem"]), default="lemmatize", show_default=True)
@click.option("--columns", multiple=True, help="Keyword column (repeatable; default: all detected).")
@_common_run_options
def stem(input_path, method, columns, out, as_json):
    """Keywords Stem: normalize keyword columns, emit result + keyword map."""
    params = {"method": method}
    if columns:
        params["columns"] = list(columns)
    _execute(input_path, "keywords_stem", params, out, as_json)


@main.command()
@click.argument("input_path", metavar="INPUT")
@_topic_flags
@_prep_options_flags
@_common_run_options
def lda(input_path, column, k, alpha, beta, iterations, seed, top_n,
        lambda_relevance, normalization, remove_copyright, extra_stopwords, out, as_json):
    """Topic modeling with collapsed-Gibbs LDA."""
    params = _topic_param_dict(column, k, alpha, beta, iterations, seed, top_n,
                               lambda_relevance, normalization, remove_copyright, extra_stopwords)
    _execute(input_path, "topic_lda", params, out, as_json)


@main.command()
@click.argument("input_path", metavar="INPUT")
@_topic_flags
@_prep_options_flags
@_common_run_options
def btm(input_path, column, k, alpha, beta, iterations, seed, top_n,
        lambda_relevance, normalization, remove_copyright, extra_stopwords, out, as_json):
    """Topic modeling with the biterm model (short texts)."""
    params = _topic_param_dict(column, k, alpha, beta, iterations, seed, top_n,
                               lambda_relevance, normalization, remove_copyright, extra_stopwords)
    _execute(input_path, "topic_btm", params, out, as_json)


@main.command()
@click.argument("input_path", metavar="INPUT")
@click.option("--embeddings-csv", "embeddings", required=True, type=click.Path(exists=True),
              help="Sidecar CSV file (row_index,v0,...) of precomputed embeddings.")
@click.option("--column", default=None, help="Text column for term ranking.")
@click.option("--k", default=2, show_default=True, help="Cluster count.")
@click.option("--seed", default=0, show_default=True)
@click.option("--top-n", default=10, show_default=True)
@_prep_options_flags
@_common_run_options
def ctfidf(input_path, embeddings, column, k, seed, top_n,
           normalization, remove_copyright, extra_stopwords, out, as_json):
    """Cluster precomputed embeddings and rank terms with class-based TF-IDF."""
    params = {
        "embeddings_csv": Path(embeddings).read_text("utf-8"),
        "k": k, "seed": seed, "top_n": top_n,
        "normalization": normalization,
        "remove_copyright": remove_copyright,
        "extra_stopwords": list(extra_stopwords),
    }
    if column:
        params["column"] = column
    _execute(input_path, "topic_ctfidf", params, out, as_json)


@main.command()
@click.argument("input_path", metavar="INPUT")
@click.option("--column", default=None, help="Multivalue column (default: first detected).")
@click.option("--min-support", default=0.02, show_default=True)
@click.option("--min-confidence", default=0.3, show_default=True)
@click.option("--selected-node", "selected_nodes", multiple=True,
              help="Restrict the graph to these nodes (repeatable).")
@_common_run_options
def net(input_path, column, min_support, min_confidence, selected_nodes, out, as_json):
    """Bidirectional keyword network from association rules."""
    params = {"min_support": min_support, "min_confidence": min_confidence}
    if column:
        params["column"] = column
    if selected_nodes:
        params["selected_nodes"] = list(selected_nodes)
    _execute(input_path, "network", params, out, as_json)


@main.command()
@click.argument("input_path", metavar="INPUT")
@click.option("--year-min", type=int, default=None)
@click.option("--year-max", type=int, default=None)
@_common_run_options
def sunburst(input_path, year_min, year_max, out, as_json):
    """Document type / source title / publication year hierarchy."""
    params = {}
    if year_min is not None:
        params["year_min"] = year_min
    if year_max is not None:
        params["year_max"] = year_max
    _execute(input_path, "sunburst", params, out, as_json)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=None, type=int, help="Overrides BIBLIOTEXT_PORT.")
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app
    from .service.config import ServiceConfig

    config = ServiceConfig.from_env()
    uvicorn.run(create_app(config), host=host, port=port or config.port)


if __name__ == "__main__":
    main()

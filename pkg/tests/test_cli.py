from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

from bibliotext.cli import main

from conftest import SOURCE_FIXTURES


@pytest.fixture
def runner():
    return CliRunner()


def test_check_table(runner):
    result = runner.invoke(main, ["check", str(SOURCE_FIXTURES["scopus"])])
    assert result.exit_code == 0
    lines = [ln for ln in result.output.splitlines() if ln and not ln.startswith(("-", "source", "analysis"))]
    assert len(lines) == 4
    assert all("yes" in ln for ln in lines)


def test_check_json(runner):
    result = runner.invoke(main, ["check", str(SOURCE_FIXTURES["custom_minimal"]), "--json"])
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["source"] == "custom"
    assert set(doc["capabilities"]) == {
        "keywords_stem", "topic_modeling", "bidirectional_network", "sunburst",
    }


def test_check_parse_failure_exit_2(runner, tmp_path):
    bad = tmp_path / "empty.csv"
    bad.write_bytes(b"")
    result = runner.invoke(main, ["check", str(bad)])
    assert result.exit_code == 2


def test_stem_writes_result_and_map(runner, tmp_path):
    out = tmp_path / "o"
    result = runner.invoke(main, [
        "stem", str(SOURCE_FIXTURES["scopus"]), "--method", "lemmatize", "--out", str(out),
    ])
    assert result.exit_code == 0, result.output
    assert (out / "result.csv").exists()
    assert (out / "keywords_map.csv").exists()
    assert (out / "result.json").exists()
    map_lines = (out / "keywords_map.csv").read_text().splitlines()
    assert map_lines[0] == "original,modified"
    assert len(map_lines) > 1


def test_lda_k1_exit_4(runner, tmp_path):
    result = runner.invoke(main, [
        "lda", str(SOURCE_FIXTURES["scopus"]), "--k", "1", "--out", str(tmp_path / "o"),
    ])
    assert result.exit_code == 4


def test_sunburst_missing_doctype_exit_3(runner, tmp_path):
    result = runner.invoke(main, [
        "sunburst", str(SOURCE_FIXTURES["custom_keywords"]), "--out", str(tmp_path / "o"),
    ])
    assert result.exit_code == 3
    assert "Document Type" in result.output


def test_net_selected_nodes(runner, tmp_path):
    out = tmp_path / "o"
    result = runner.invoke(main, [
        "net", str(SOURCE_FIXTURES["custom_keywords"]),
        "--min-support", "0.1", "--min-confidence", "0.1",
        "--selected-node", "topic modeling", "--selected-node", "text mining",
        "--out", str(out), "--json",
    ])
    assert result.exit_code == 0, result.output
    doc = json.loads(result.output.splitlines()[-1])
    nodes = {n["id"] for n in doc["graph"]["nodes"]}
    assert nodes <= {"topic modeling", "text mining"}
    assert (out / "graph.graphml").exists()


def test_btm_runs_on_fixture(runner, tmp_path):
    out = tmp_path / "o"
    result = runner.invoke(main, [
        "btm", str(SOURCE_FIXTURES["wos"]), "--k", "2", "--iterations", "40",
        "--seed", "3", "--out", str(out),
    ])
    assert result.exit_code == 0, result.output
    doc = json.loads((out / "result.json").read_text())
    assert doc["model"] == "btm"
    assert len(doc["top_terms"]) == 2


def test_ctfidf_with_embeddings(runner, tmp_path):
    emb = tmp_path / "emb.csv"
    rows = ["row_index,v0,v1"]
    for i in range(5):
        rows.append(f"{i},{i % 2}.0,{(i + 1) % 2}.0")
    emb.write_text("\n".join(rows) + "\n")
    out = tmp_path / "o"
    result = runner.invoke(main, [
        "ctfidf", str(SOURCE_FIXTURES["custom_full"]),
        "--embeddings-csv", str(emb), "--k", "2", "--out", str(out),
    ])
    assert result.exit_code == 0, result.output
    doc = json.loads((out / "result.json").read_text())
    assert len(doc["labels"]) == 5
    assert len(doc["clusters"]) == 2


def test_help_lists_all_subcommands(runner):
    result = runner.invoke(main, ["--help"])
    for cmd in ("check", "stem", "lda", "btm", "ctfidf", "net", "sunburst", "serve"):
        assert cmd in result.output

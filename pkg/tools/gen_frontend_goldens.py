"""Regenerates frontend/tests/goldens/*.json from the Python engine.

The frontend's client-side computations (lambda re-ranking) and its
render-exactly-what-the-API-said contracts are tested against these files,
so the two implementations cannot drift silently.

Usage: python tools/gen_frontend_goldens.py
"""
from __future__ import annotations

import json
from pathlib import Path

from bibliotext.analyses import run_analysis
from bibliotext.ingest import parse_dataset
from bibliotext.topics import relevance_ranking

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "frontend" / "tests" / "goldens"


def relevance_golden() -> dict:
    ds = parse_dataset((ROOT / "fixtures" / "scopus.csv").read_bytes())
    result = run_analysis(ds, "topic_lda", {"k": 3, "iterations": 120, "seed": 9}).result
    lambdas = [0.0, 0.6, 1.0]
    expected = {
        str(lam): [
            [[term, score] for term, score in topic]
            for topic in relevance_ranking(
                [row for row in result["phi"]],
                result["term_probabilities"],
                tuple(result["vocabulary"]),
                lam,
            )
        ]
        for lam in lambdas
    }
    return {
        "phi": result["phi"],
        "term_probabilities": result["term_probabilities"],
        "vocabulary": result["vocabulary"],
        "expected": expected,
    }


def network_golden() -> dict:
    ds = parse_dataset((ROOT / "fixtures" / "custom_keywords.csv").read_bytes())
    params = {"min_support": 0.1, "min_confidence": 0.1}
    full = run_analysis(ds, "network", params).result
    selected = sorted({n["id"] for n in full["graph"]["nodes"]})[:2]
    restricted = run_analysis(ds, "network", {**params, "selected_nodes": selected}).result
    return {"params": params, "full": full, "selected_nodes": selected, "restricted": restricted}


def sunburst_golden() -> dict:
    ds = parse_dataset((ROOT / "fixtures" / "scopus.csv").read_bytes())
    result = run_analysis(ds, "sunburst", {}).result
    return {"row_count": ds.row_count, "result": result}


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for name, payload in {
        "relevance.json": relevance_golden(),
        "network.json": network_golden(),
        "sunburst.json": sunburst_golden(),
    }.items():
        (OUT / name).write_text(json.dumps(payload, indent=1, sort_keys=True))
        print(f"wrote {OUT / name}")


if __name__ == "__main__":
    main()

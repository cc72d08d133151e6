from __future__ import annotations

from pathlib import Path

import pytest

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

SOURCE_FIXTURES = {
    "scopus": FIXTURES / "scopus.csv",
    "wos": FIXTURES / "wos_tab.txt",
    "wos_tagged": FIXTURES / "wos_tagged.txt",
    "lens": FIXTURES / "lens.csv",
    "custom_keywords": FIXTURES / "custom_keywords.csv",
    "custom_full": FIXTURES / "custom_full.csv",
    "custom_minimal": FIXTURES / "custom_minimal.csv",
}


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


def fixture_bytes(name: str) -> bytes:
    return SOURCE_FIXTURES[name].read_bytes()

import json
from pathlib import Path

import pytest

from ovp_toolkit.lexicon import load_lexicon
from ovp_toolkit.llm import MockChatBackend

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon()


@pytest.fixture()
def mock_chat():
    return MockChatBackend()


@pytest.fixture(scope="session")
def attested_sentences():
    with open(DATA_DIR / "attested_sentences.json", encoding="utf-8") as fh:
        return json.load(fh)["rows"]


@pytest.fixture(scope="session")
def en2ovp_fixture():
    with open(DATA_DIR / "en2ovp_fixture.json", encoding="utf-8") as fh:
        return json.load(fh)["sentences"]

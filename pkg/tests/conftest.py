from pathlib import Path

import pytest

from derivlink.analyzer import load_paradigms
from derivlink.lexicon import load_lexicon
from derivlink.morphemes import load_morphemes

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


@pytest.fixture(scope="session")
def lex():
    return load_lexicon(fixture_path("lexicon.rec").read_text())


@pytest.fixture(scope="session")
def runon_lex():
    return load_lexicon(fixture_path("runons.rec").read_text())


@pytest.fixture(scope="session")
def table():
    return load_morphemes(fixture_path("morphemes.rec").read_text())


@pytest.fixture(scope="session")
def paradigms():
    return load_paradigms(fixture_path("paradigms.rec").read_text())


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)

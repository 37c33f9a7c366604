from pathlib import Path

import pytest

from plpkit.parser import parse_file, parse_literals

DATA = Path(__file__).parent / "data"

# acceptance lines collected by test_acceptance and echoed in the summary
ACCEPTANCE: list[str] = []


def load(name: str):
    return parse_file(DATA / name)


def lits(text: str) -> frozenset:
    """``"neg_a b"`` -> frozenset of literals."""
    return frozenset(parse_literals(text))


def sets(*texts: str) -> set:
    return {lits(t) for t in texts}


@pytest.fixture
def data_dir() -> Path:
    return DATA


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from coprobber.harness import CopNumberCache, load_corpus  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def corpus6():
    return load_corpus(6)


@pytest.fixture(scope="session")
def corpus7():
    return load_corpus(7)


@pytest.fixture(scope="session")
def corpus8():
    return load_corpus(8)


@pytest.fixture(scope="session")
def session_cache():
    """In-memory cop-number cache shared by every exhaustive run of a session."""
    return CopNumberCache()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

import pytest

from itq import fixtures
from itq.generators import random_corpus

CORPUS_SEED = 20260101
CORPUS_SIZE = 1000


@pytest.fixture(scope="session")
def fixture_quivers():
    return {name: fixtures.load(name) for name in fixtures.names()}


@pytest.fixture(scope="session")
def expected():
    return fixtures.expected()


@pytest.fixture(scope="session")
def corpus(fixture_quivers):
    """Fixtures plus the seeded random connected quivers (n <= 6, multiplicities <= 2)."""
    return list(fixture_quivers.values()) + random_corpus(CORPUS_SEED, CORPUS_SIZE)


@pytest.fixture(scope="session")
def small_random():
    return random_corpus(7, 150, max_n=5)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(mod.RESULTS):
        lines = mod.RESULTS[criterion]
        ok = all(o for o, _ in lines)
        terminalreporter.write_line(f"criterion {criterion}: {'PASS' if ok else 'FAIL'}")
        for _, line in lines:
            terminalreporter.write_line("    " + line)

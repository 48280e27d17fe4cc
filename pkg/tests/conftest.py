import functools

import pytest

from mcgverify.replay import Replayer, load_and_validate_seeds
from mcgverify.seeds import load_seed_data
from mcgverify.words import WordEvaluator

GENERA = (5, 6, 7, 8)


@functools.lru_cache(maxsize=None)
def registry(genus):
    return load_and_validate_seeds(genus)


@functools.lru_cache(maxsize=None)
def evaluator(genus):
    return WordEvaluator(registry(genus))


@functools.lru_cache(maxsize=None)
def full_replay(genus):
    """One complete replay per genus, shared by every test that needs it."""
    data = load_seed_data(genus)
    R = Replayer(load_and_validate_seeds(genus, data), transport=data.get("transport"))
    certs = R.run((1, 2, 3, 4))
    return R, certs


@pytest.fixture(scope="session")
def reg5():
    return registry(5)


@pytest.fixture(scope="session")
def E5():
    return evaluator(5)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)

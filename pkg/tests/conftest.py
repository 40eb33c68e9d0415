"""Shared fixtures: small rings and the cached corpus pipeline."""

import pytest

from implicitkit.arith import QQ, PrimeField
from implicitkit.poly import Ring

from pipeline import run_corpus


@pytest.fixture
def R2():
    return Ring(2, QQ)


@pytest.fixture
def R3():
    return Ring(3, QQ)


@pytest.fixture
def R3p():
    return Ring(3, PrimeField(101))


@pytest.fixture(scope="session")
def corpus_results():
    return run_corpus()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])

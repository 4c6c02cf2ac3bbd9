from functools import lru_cache

import pytest

from groupring.catalog import catalog, corpus_names
from groupring.idempotents import pci_strongly_monomial


@lru_cache(maxsize=None)
def pci_of(name):
    return pci_strongly_monomial(catalog(name))


@pytest.fixture
def grp():
    return catalog


SMALL = [n for n in corpus_names() if catalog(n).order <= 16]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])

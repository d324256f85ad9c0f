from __future__ import annotations

import pytest

from fibrenrich.corpus import load_corpus


@pytest.fixture(scope="session")
def ws():
    return load_corpus()


@pytest.fixture
def fresh_ws():
    return load_corpus(fresh=True)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)

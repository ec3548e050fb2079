from __future__ import annotations

import pytest

from diagcover.catalog import cached_automorphism_action, make

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def aut_a5():
    return cached_automorphism_action("A5")


@pytest.fixture
def group():
    def build(spec: str):
        G = make(spec)
        G.materialize()
        return G
    return build


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

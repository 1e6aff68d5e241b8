from __future__ import annotations

import pytest

from almostplanar.core.graph import Graph

ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture
def criterion():
    """Record an acceptance outcome: ``criterion(n, title, passed, detail)``."""

    def record(n: int, title: str, passed: bool, detail: str = "") -> None:
        ACCEPTANCE[n] = (title, passed, detail)
        print(f"criterion {n} [{title}]: {'PASS' if passed else 'FAIL'} {detail}".rstrip())

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n} [{title}]: {'PASS' if passed else 'FAIL'} {detail}".rstrip())


def G(n: int, edges) -> Graph:
    return Graph(n, edges)

import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record_criterion():
    """Collects one PASS/FAIL line per acceptance criterion for the summary."""

    def record(label: str, passed: bool, detail: str = "") -> None:
        line = f"[{'PASS' if passed else 'FAIL'}] {label}"
        if detail:
            line += f" -- {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def small_matrices(draw, max_rows=3, max_cols=7, max_entry=5, min_cols=1):
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(max(m, min_cols), max_cols))
    entry = st.integers(-max_entry, max_entry)
    return [draw(st.lists(entry, min_size=n, max_size=n)) for _ in range(m)]

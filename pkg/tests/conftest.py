from fractions import Fraction

import pytest
from hypothesis import strategies as st

from genflanders.exact_matrix import Matrix

_acceptance_lines: list[str] = []


def M(rows):
    return Matrix.from_rows([[Fraction(x) for x in r] for r in rows])


@pytest.fixture
def report():
    """Record one pass/fail line for the acceptance summary."""
    def _report(criterion: str, ok: bool, detail: str = ""):
        _acceptance_lines.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}"
                                 + (f" -- {detail}" if detail else ""))
        return ok
    return _report


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def matrices(draw, rows=None, cols=None, max_size=4, elements=small_rationals):
    if rows is None:
        rows = draw(st.integers(0, max_size))
    if cols is None:
        cols = draw(st.integers(0, max_size))
    entries = draw(st.lists(elements, min_size=rows * cols, max_size=rows * cols))
    return Matrix(rows, cols, entries)


@st.composite
def square_matrices(draw, max_size=4, elements=small_rationals):
    n = draw(st.integers(0, max_size))
    return draw(matrices(n, n, elements=elements))


# Sparse entries make singular and high-index matrices common.
sparse_ints = st.sampled_from([0, 0, 0, 1, -1, 2])

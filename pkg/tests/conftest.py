import numpy as np
import pytest
from hypothesis import strategies as st

from pacbasis import FormalContext, star_alliance

_ACCEPTANCE = []


def small_context(rng, n_attributes, max_objects=12):
    k = int(rng.integers(0, max_objects + 1))
    p = float(rng.random())
    return FormalContext.from_matrix(rng.random((k, n_attributes)) < p)


@st.composite
def contexts(draw, min_attributes=1, max_attributes=6, max_objects=10):
    n = draw(st.integers(min_attributes, max_attributes))
    k = draw(st.integers(0, max_objects))
    cells = draw(st.lists(st.lists(st.booleans(), min_size=n, max_size=n), min_size=k, max_size=k))
    return FormalContext.from_matrix(np.array(cells, dtype=bool).reshape(k, n))


@pytest.fixture(scope="session")
def sa():
    return star_alliance()


@pytest.fixture
def one_object():
    """Single object with row {a, b} over {a, b, c}."""
    return FormalContext.from_rows(["a", "b", "c"], [("g1", ["a", "b"])])


@pytest.fixture
def acceptance():
    def record(number, title, passed, detail=""):
        _ACCEPTANCE.append((number, title, passed, detail))
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(_ACCEPTANCE):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {number}. {title}  {detail}")

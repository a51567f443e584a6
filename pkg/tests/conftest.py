import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from normpar import DEFAULT_TOL, Field

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=300, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("fast", max_examples=20, deadline=None)
settings.load_profile("default")


@pytest.fixture
def tol():
    return DEFAULT_TOL


# Lattice values keep hypothesis away from tolerance boundaries: products,
# ratios and maxima of these are either exactly equal or far apart.
LATTICE = [0.0, 1.0, -1.0, 2.0, -2.0, 0.5, -0.5, 3.0, -3.0]
COMPLEX_LATTICE = [0, 1, -1, 1j, -1j, 1 + 1j, 1 - 1j, -1 + 1j, 2, -2j, 0.5, 0.5j]


@st.composite
def lattice_vectors(draw, n=None, field=None):
    n = draw(st.integers(1, 5)) if n is None else n
    field = draw(st.sampled_from(list(Field))) if field is None else field
    pool = LATTICE if field is Field.REAL else COMPLEX_LATTICE
    return np.array(draw(st.lists(st.sampled_from(pool), min_size=n, max_size=n)), dtype=field.dtype)


@st.composite
def lattice_pairs(draw, field=None):
    n = draw(st.integers(1, 5))
    field = draw(st.sampled_from(list(Field))) if field is None else field
    return draw(lattice_vectors(n, field)), draw(lattice_vectors(n, field))


@st.composite
def lattice_matrices(draw, n=None, field=None):
    n = draw(st.integers(1, 4)) if n is None else n
    field = draw(st.sampled_from(list(Field))) if field is None else field
    pool = LATTICE if field is Field.REAL else COMPLEX_LATTICE
    rows = draw(st.lists(st.lists(st.sampled_from(pool), min_size=n, max_size=n), min_size=n, max_size=n))
    return np.array(rows, dtype=field.dtype)



# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

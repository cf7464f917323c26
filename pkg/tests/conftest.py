import numpy as np
import pytest
from hypothesis import strategies as st

from ctcsim.channels import DaviesParams
from ctcsim.qmat import random_density, random_pure_ket


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_params(rng, A_min=0.0, A_max=3.0):
    A = rng.uniform(A_min, A_max)
    return DaviesParams(
        p=rng.uniform(0, 0.5),
        A=A,
        G=A / 2 + rng.uniform(0, 2.5),
        omega=rng.uniform(0.1, 3.0),
        t=rng.uniform(0, 5.0),
    )


@st.composite
def davies_params(draw, A_min=0.0):
    A = draw(st.floats(A_min, 3.0))
    return DaviesParams(
        p=draw(st.floats(0.0, 0.5)),
        A=A,
        G=A / 2 + draw(st.floats(0.0, 3.0)),
        omega=draw(st.floats(0.1, 3.0)),
        t=draw(st.floats(0.0, 6.0)),
    )


@st.composite
def qubit_states(draw):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_density(np.random.default_rng(seed))


@st.composite
def pure_kets(draw):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_pure_ket(np.random.default_rng(seed))


# one summary line per acceptance criterion

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    num, title = mark.args
    _criteria[num] = (title, call.excinfo is None)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        title, ok = _criteria[num]
        terminalreporter.write_line(f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {title}")

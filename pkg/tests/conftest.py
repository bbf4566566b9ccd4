import numpy as np
import pytest

from symmspace.config import SHIPPED_TRIPLES, load_builtin

# filled by test_acceptance, printed once at the end of the run
ACCEPTANCE_LINES = []


@pytest.fixture(scope="session", params=SHIPPED_TRIPLES)
def shipped(request):
    return load_builtin(request.param)


@pytest.fixture(scope="session")
def su2():
    return load_builtin("su2")


@pytest.fixture(scope="session")
def sl2():
    return load_builtin("sl2")


@pytest.fixture(scope="session")
def sl3():
    return load_builtin("sl3")


@pytest.fixture(scope="session")
def su3():
    return load_builtin("su3")


@pytest.fixture(scope="session")
def so5():
    return load_builtin("so5-inner")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

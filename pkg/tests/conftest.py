import pytest

from greenmorita import fixtures
from greenmorita.bimodule import Imprimitivity
from greenmorita.semigroup import symmetric_inverse_monoid


@pytest.fixture(scope="session")
def I2():
    return symmetric_inverse_monoid(2)


@pytest.fixture(scope="session")
def I3():
    return symmetric_inverse_monoid(3)


@pytest.fixture(scope="session")
def fix1():
    return fixtures.fix1()


@pytest.fixture(scope="session")
def fix2():
    return fixtures.fix2()


@pytest.fixture(scope="session")
def fix3():
    return fixtures.fix3()


_IMPS = {}


def imprimitivity(name):
    if name not in _IMPS:
        fx = fixtures.get(name)
        _IMPS[name] = Imprimitivity(fx.ga, fx.Hp)
    return _IMPS[name]


ACCEPTANCE_LINES = {}


def record(criterion, ok, detail):
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} | {detail}"
    ACCEPTANCE_LINES[criterion] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])

import pytest

from tilelab import shipped_coarse, shipped_rules, shipped_tileset
from tilelab.engine import TileTable
from tilelab.substitution import CoarseTable


@pytest.fixture(scope="session")
def ts():
    return shipped_tileset()


@pytest.fixture(scope="session")
def table(ts):
    return TileTable(ts)


@pytest.fixture(scope="session")
def cts():
    return shipped_coarse()


@pytest.fixture(scope="session")
def ctable(cts):
    return CoarseTable(cts)


@pytest.fixture(scope="session")
def rules(cts):
    return shipped_rules(cts)


def pytest_terminal_summary(terminalreporter, config):
    from test_acceptance import acceptance_lines
    lines = acceptance_lines(config)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

import pytest

from helpers import R2, two_segment_map

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def r2():
    return R2


@pytest.fixture(scope="session")
def seg2():
    return two_segment_map()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

import numpy as np
import pytest

# Pass/fail lines recorded by the acceptance tests, echoed after the
# run so they survive output capture.
ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20260819)


@pytest.fixture
def criterion():
    def record(line):
        ACCEPTANCE_LINES.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

import numpy as np
import pytest

from bmcap import ChannelParams


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def reference_channel():
    # the setting used throughout the figures
    return ChannelParams(eta=0.7, N=8.0, s=0.8)


ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_log():
    def record(number, title, passed, detail):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title} -- {detail}"
        print(line)
        ACCEPTANCE_LINES.append((number, line))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

import os
import sys

import pytest

HERE = os.path.dirname(__file__)
sys.path.insert(0, HERE)
SCHEMA_DIR = os.path.join(os.path.dirname(HERE), "docs", "schemas")

from acceptance_registry import RESULTS  # noqa: E402


@pytest.fixture(scope="session")
def schema_dir():
    return SCHEMA_DIR


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[key])

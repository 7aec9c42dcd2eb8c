import random
import sys

import pytest

from brauercell.murphy import murphy_basis


@pytest.fixture(scope="session")
def basis():
    """Memoized access to cellular bases (murphy_basis is itself cached, so
    this is just a convenience handle shared by the suite)."""
    return murphy_basis


@pytest.fixture()
def rng():
    return random.Random(20240817)


def pytest_terminal_summary(terminalreporter):
    """Echo the acceptance pass/fail lines past pytest's output capture."""
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

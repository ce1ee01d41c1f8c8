import os
import sys

import pytest
from hypothesis import HealthCheck, settings

# Numeric cases vary a lot in per-example cost; wall-clock deadlines only
# add flakiness on loaded CI machines.
settings.register_profile(
    "numeric",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("numeric")

sys.path.insert(0, os.path.dirname(__file__))

# One line per acceptance criterion, echoed at the end of the run so the
# pass/fail record is visible without -s.
_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_lines():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

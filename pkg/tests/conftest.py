import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

_criterion_lines = []


def record_criterion(line):
    """Collected by the acceptance tests; echoed after the run."""
    _criterion_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in _criterion_lines:
            terminalreporter.write_line(line)

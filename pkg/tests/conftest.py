import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict[str, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion this test belongs to")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    name = marker.args[0]
    if call.when == "setup" and call.excinfo is not None:
        _criteria.setdefault(name, []).append(False)
    elif call.when == "call":
        _criteria.setdefault(name, []).append(call.excinfo is None)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, results in _criteria.items():
        status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"{status}  {name}  ({sum(results)}/{len(results)} checks)")

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from toricgamma.dataset import load_bundled  # noqa: E402
from toricgamma.fan import face_fan  # noqa: E402

ID34 = [(1, 0, 0), (0, 1, 0), (-2, 1, 5), (1, -1, -3), (-1, 1, 3)]
P3 = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)]
P2 = [(1, 0), (0, 1), (-1, -1)]
SURFACE_EX = [(1, 0), (1, 2), (-1, 2), (-1, -1)]
REMARK58 = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1), (-1, -1, 0), (1, 1, 0)]


@pytest.fixture(scope="session")
def table1():
    return load_bundled("table1")


@pytest.fixture(scope="session")
def table2():
    return load_bundled("table2")


@pytest.fixture(scope="session")
def bundled_fans(table1, table2):
    recs = table1 + table2 + load_bundled("remark58")
    return [(r.id, face_fan(r.generators)) for r in recs]


_acceptance: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.failed or report.skipped:
        _acceptance[report.nodeid] = (report.outcome, name)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for outcome, name in _acceptance.values():
        status = {"passed": "PASS", "skipped": "SKIP"}.get(outcome, "FAIL")
        terminalreporter.write_line(f"{status}  {name}")

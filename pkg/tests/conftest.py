from __future__ import annotations

import shutil
from pathlib import Path

import pytest

from deanery.store import load_registry

FIXTURES = Path(__file__).parent / "fixtures"
DEMO_ROOT = FIXTURES / "demo_root"
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def demo_root(tmp_path) -> Path:
    """Writable copy of the committed fixture store."""
    root = tmp_path / "root"
    shutil.copytree(DEMO_ROOT, root)
    return root


@pytest.fixture(scope="session")
def demo_registry():
    """Shared read-only registry loaded from the committed store."""
    return load_registry(DEMO_ROOT)


# Acceptance criteria get one explicit pass/fail line in the summary.
_acceptance_results: list[tuple[str, str]] = []


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(name): marks a test as one acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        _acceptance_results.append((marker.args[0], report.outcome.upper()))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, outcome in _acceptance_results:
        word = "PASS" if outcome == "PASSED" else outcome
        terminalreporter.write_line(f"ACCEPTANCE  {name}: {word}")

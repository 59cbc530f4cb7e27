"""Shared fixtures and the acceptance-criteria summary hook.

Tests marked ``@pytest.mark.acceptance(n, title=...)`` get one
``ACCEPTANCE <n> PASS/FAIL`` line in the terminal summary, so the
criterion-by-criterion outcome is visible in a single block at the end
of a run. A test can attach a short measurement string through the
``acceptance_detail`` fixture.
"""

import json
import pathlib

import pytest

DATA_DIR = pathlib.Path(__file__).parent / "data"
GOLDEN_DIR = pathlib.Path(__file__).parent / "golden"

_RESULTS = {}
_DETAILS = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "acceptance(n, title): tags a test as acceptance criterion n",
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    n = marker.args[0]
    title = marker.kwargs.get("title", "")
    if report.when == "call":
        status = "PASS" if report.passed else "FAIL"
        _RESULTS[n] = (status, title, _DETAILS.get(item.nodeid, ""))
    elif report.when == "setup" and (report.failed or report.skipped):
        _RESULTS[n] = ("FAIL", title, "setup error")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        status, title, detail = _RESULTS[n]
        line = f"ACCEPTANCE {n:>2} {status}  {title}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)


@pytest.fixture
def acceptance_detail(request):
    """Attach a measurement string to the test's acceptance summary line."""

    def set_detail(text: str) -> None:
        _DETAILS[request.node.nodeid] = str(text)

    return set_detail


@pytest.fixture
def data_path():
    def path_for(name: str) -> str:
        return str(DATA_DIR / name)

    return path_for


@pytest.fixture
def load_fixture():
    def load(name: str):
        with open(DATA_DIR / name, "r", encoding="utf-8") as fh:
            return json.load(fh)

    return load

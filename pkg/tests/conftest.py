import os

import pytest
from hypothesis import settings

from sporadic import pointcount
from sporadic.qseries import g_series

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# filled by test_acceptance; printed after the run
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def g1600():
    return g_series(1600)


@pytest.fixture(scope="session")
def g200(g1600):
    return g1600.truncate(200)


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    # keep the CLI away from the user's cache directory
    monkeypatch.setenv("SPORADIC_CACHE_DIR", str(tmp_path / "cache"))
    monkeypatch.setattr(pointcount, "TRACE_STORE", None)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

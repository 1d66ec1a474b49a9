import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
settings.register_profile("thorough", max_examples=500, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def perr_test_mode(monkeypatch):
    """Turn on the potential trace and bound assertions for one test."""
    monkeypatch.setenv("PERR_TEST_MODE", "1")


# -- acceptance report -------------------------------------------------------

def pytest_configure(config):
    config._perr_acceptance = []


@pytest.fixture
def criterion(request):
    """Record one pass/fail line for an acceptance criterion.

    Usage: ``criterion(3, ok, "detail")``. A test that raises before
    recording is reported as a failure.
    """
    lines = request.config._perr_acceptance
    before = len(lines)

    def record(num, ok, detail=""):
        lines.append((num, bool(ok), detail))
        return ok

    yield record
    if len(lines) == before:
        lines.append((request.node.name, False, "raised before reporting"))


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "_perr_acceptance", [])
    if not lines:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for num, ok, detail in sorted(lines, key=lambda x: (str(type(x[0])), x[0])):
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")

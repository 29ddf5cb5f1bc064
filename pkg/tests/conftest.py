import pytest
from hypothesis import HealthCheck, settings

from ncgraph.catalog import FamilySpec, default_grid
from ncgraph.predictions import run_catalog_verification

settings.register_profile(
    "ncgraph", deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large]
)
settings.load_profile("ncgraph")


@pytest.fixture(scope="session")
def grid_reports():
    """Full default-grid verification, shared by every test that needs it (~15 s)."""
    reports = run_catalog_verification(default_grid())
    return {r.spec: r for r in reports}


def spec(text: str) -> FamilySpec:
    return FamilySpec.parse(text)


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion, after the usual summary."""
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", []))
            if "criterion" in props and rep.when == "call":
                lines.append((props["criterion"], "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, status in sorted(lines):
            terminalreporter.write_line(f"{status}  criterion {name}")

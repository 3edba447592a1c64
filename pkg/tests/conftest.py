import json
import time
from pathlib import Path

import pytest

# Seed for every randomized property check in the suite.
SEED = 20260101

FIXTURES = Path(__file__).parent / "fixtures"

ACCEPTANCE_LINES: list[str] = []

# wall-clock seconds of the shared full-grid sweep, filled in by `reference_sweep`
TIMINGS: dict[str, float] = {}


@pytest.fixture(scope="session")
def exact_fixture():
    return json.loads((FIXTURES / "exact_complex_roots.json").read_text())


@pytest.fixture(scope="session")
def reference_sweep():
    from ptspectra.survey import REFERENCE_A, REFERENCE_B, sweep

    t0 = time.perf_counter()
    results = sweep(REFERENCE_A, REFERENCE_B)
    TIMINGS["reference_sweep"] = time.perf_counter() - t0
    return results


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def pytest_collection_modifyitems(items):
    for item in items:
        if "reference_sweep" in getattr(item, "fixturenames", ()):
            item.add_marker(pytest.mark.slow)

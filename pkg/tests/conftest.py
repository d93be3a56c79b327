from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from freeplate import ball_spectrum as ball

settings.register_profile(
    "default", max_examples=40, deadline=None, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def disk_tone():
    return ball.fundamental_tone(2, 1.0)


@pytest.fixture(scope="session")
def disk_profile(disk_tone):
    return ball.radial_profile(disk_tone)


@pytest.fixture(scope="session")
def tone_grid():
    """Fundamental tones for d in 2..5 and tau in {0.1, 1, 10, 100}."""
    return {(d, t): ball.fundamental_tone(d, t) for d in (2, 3, 4, 5) for t in (0.1, 1.0, 10.0, 100.0)}


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """record(n, ok, detail): print one PASS/FAIL line per criterion, then assert."""

    def record(n: int, ok: bool, detail: str):
        line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(line)
        ACCEPTANCE_LINES.append(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

from __future__ import annotations

import time
from contextlib import contextmanager

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("quotlab", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("quotlab")

CRITERIA: dict[int, tuple[str, bool, float, float]] = {}


@pytest.fixture
def criterion():
    """Time an acceptance criterion and record a pass/fail line for the summary."""

    @contextmanager
    def run(number: int, title: str, limit: float):
        start = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            elapsed = time.perf_counter() - start
            within = elapsed < limit
            CRITERIA[number] = (title, ok and within, elapsed, limit)
            line = f"criterion {number:>2}: {'PASS' if ok and within else 'FAIL'}  {title}  ({elapsed:.2f}s, limit {limit:g}s)"
            print(line)
        assert within, f"criterion {number} took {elapsed:.2f}s, limit {limit:g}s"

    return run


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        title, ok, elapsed, limit = CRITERIA[number]
        terminalreporter.write_line(
            f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}  ({elapsed:.2f}s, limit {limit:g}s)"
        )

import contextlib
import time

import pytest

_ACCEPTANCE: list[str] = []


@pytest.fixture
def criterion():
    """Context manager timing one acceptance criterion and recording PASS/FAIL."""

    @contextlib.contextmanager
    def run(number: int, title: str, limit_s: float | None = None):
        start = time.perf_counter()
        status = "FAIL"
        note = ""
        try:
            yield
            elapsed = time.perf_counter() - start
            if limit_s is not None and elapsed >= limit_s:
                note = " over time limit"
                raise AssertionError(f"criterion {number} took {elapsed:.1f}s, limit {limit_s}s")
            status = "PASS"
        finally:
            elapsed = time.perf_counter() - start
            limit = f", limit {limit_s:g}s" if limit_s is not None else ""
            line = f"criterion {number:>2} {status}: {title} ({elapsed:.1f}s{limit}){note}"
            _ACCEPTANCE.append(line)
            print(line)

    return run


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)

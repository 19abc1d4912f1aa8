import contextlib
import time

import pytest

_ACCEPTANCE = []


@pytest.fixture
def criterion():
    """Context manager recording one PASS/FAIL line per acceptance criterion."""

    @contextlib.contextmanager
    def record(name, limit_s=None):
        t0 = time.perf_counter()
        try:
            yield
        except BaseException as exc:
            _ACCEPTANCE.append(f"FAIL  {name}  ({type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''})")
            raise
        elapsed = time.perf_counter() - t0
        if limit_s is not None and elapsed >= limit_s:
            _ACCEPTANCE.append(f"FAIL  {name}  (runtime {elapsed:.2f}s >= {limit_s}s)")
            raise AssertionError(f"{name}: runtime {elapsed:.2f}s exceeds {limit_s}s")
        _ACCEPTANCE.append(f"PASS  {name}  ({elapsed:.2f}s)")

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)

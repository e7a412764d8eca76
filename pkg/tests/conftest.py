import contextlib
import time

import pytest

_ACCEPTANCE = []


@pytest.fixture
def criterion():
    """Context manager recording one acceptance criterion's outcome and time."""

    @contextlib.contextmanager
    def record(label):
        start = time.perf_counter()
        try:
            yield
        except BaseException:
            _ACCEPTANCE.append((label, "FAIL", time.perf_counter() - start))
            raise
        _ACCEPTANCE.append((label, "PASS", time.perf_counter() - start))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, status, elapsed in _ACCEPTANCE:
        terminalreporter.write_line(f"{status}  {label}  ({elapsed:.1f}s)")

import contextlib
import time

import pytest

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def criterion(request):
    """Context manager recording one PASS/FAIL line for an acceptance criterion."""
    lines = request.config.stash[_LINES]

    @contextlib.contextmanager
    def record(number, title):
        notes = []
        start = time.perf_counter()
        try:
            yield notes
        except BaseException as exc:
            line = f"criterion {number:>2} FAIL  {title}  ({type(exc).__name__}: {exc})"
            lines.append(line)
            print(line)
            raise
        took = time.perf_counter() - start
        extra = "; ".join(notes)
        line = f"criterion {number:>2} PASS  {title}  [{took:.1f}s]" + (f"  {extra}" if extra else "")
        lines.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)

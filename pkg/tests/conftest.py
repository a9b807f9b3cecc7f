from contextlib import contextmanager

import pytest

ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Context manager that records one PASS/FAIL line per acceptance criterion."""
    lines = request.config.stash.setdefault(ACCEPTANCE, [])

    @contextmanager
    def check(number, title):
        try:
            yield
        except BaseException:
            line = f"criterion {number:>2}: FAIL  {title}"
            lines.append(line)
            print(line)
            raise
        line = f"criterion {number:>2}: PASS  {title}"
        lines.append(line)
        print(line)

    return check


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

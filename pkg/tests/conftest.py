import pytest

# filled by tests/test_acceptance.py: (criterion, passed, detail)
ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion.

    Use as ``with criterion("AC1 golden trigger table") as note: ...``;
    ``note(text)`` attaches measured values to the line.
    """
    from contextlib import contextmanager

    @contextmanager
    def _run(name):
        details = []
        try:
            yield details.append
        except BaseException:
            ACCEPTANCE_LINES.append((name, False, "; ".join(details)))
            raise
        ACCEPTANCE_LINES.append((name, True, "; ".join(details)))

    return _run


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_LINES:
        line = f"{'PASS' if ok else 'FAIL'}  {name}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)

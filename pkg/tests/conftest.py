import pytest

ACCEPTANCE_RESULTS = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(line)


@pytest.fixture
def record():
    """Record one pass/fail line for the acceptance summary."""

    def _record(label, passed, detail=""):
        status = "PASS" if passed else "FAIL"
        ACCEPTANCE_RESULTS.append(f"[{status}] {label}" + (f" -- {detail}" if detail else ""))

    return _record

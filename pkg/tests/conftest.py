import pytest

_CRITERIA: dict[int, str] = {}


@pytest.fixture
def report():
    """Record one pass/fail line per acceptance criterion."""

    def _report(number: int, passed: bool, detail: str = ""):
        status = "PASS" if passed else "FAIL"
        _CRITERIA[number] = f"criterion {number:2d}: {status}  {detail}".rstrip()
        print(_CRITERIA[number])

    return _report


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for k in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[k])

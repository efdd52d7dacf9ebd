import pytest

_ACCEPTANCE: list[str] = []


@pytest.fixture
def report():
    """Record one acceptance line; printed in the terminal summary."""

    def _record(number: int, title: str, ok: bool, seconds: float, limit: float):
        status = "PASS" if ok else "FAIL"
        _ACCEPTANCE.append(f"criterion {number:2d} {status}  {seconds:8.3f}s (limit {limit:g}s)  {title}")

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1])):
        terminalreporter.write_line(line)

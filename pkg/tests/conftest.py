import pytest

_criteria = []


@pytest.fixture
def criterion():
    """Record one acceptance-criterion verdict and assert it."""

    def record(num: int, desc: str, ok: bool) -> None:
        _criteria.append((num, desc, ok))
        assert ok, f"criterion {num} failed: {desc}"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num, desc, ok in sorted(_criteria):
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d} [{verdict}]: {desc}")

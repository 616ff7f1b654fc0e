import pytest

# filled by tests/test_acceptance.py: criterion number -> (passed, summary)
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def acceptance():
    def record(number: int, passed: bool, summary: str) -> None:
        ACCEPTANCE[number] = (bool(passed), summary)
        print(f"[acceptance {number}] {'PASS' if passed else 'FAIL'}: {summary}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, summary = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'} - {summary}")

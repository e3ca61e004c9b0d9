import pytest

from oddfactor.arith import ArithContext

# criterion number -> (passed, description, seconds); filled by test_acceptance
ACCEPTANCE: dict = {}


@pytest.fixture
def ctx():
    return ArithContext()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        passed, desc, secs = ACCEPTANCE[num]
        terminalreporter.write_line(
            f"{'PASS' if passed else 'FAIL'}  criterion {num:>2}: {desc} ({secs:.2f}s)")

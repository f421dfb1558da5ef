import pytest

# filled by tests/test_acceptance.py: criterion label -> (passed, detail)
ACCEPTANCE = {}


@pytest.fixture
def criterion():
    def record(label, passed, detail):
        ACCEPTANCE[label] = (bool(passed), detail)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE, key=lambda s: (int(s.split()[0].rstrip("ab.")), s)):
        passed, detail = ACCEPTANCE[label]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}: {detail}")

import pytest

from rcgs import gen_h1

ACCEPTANCE_LINES = []


@pytest.fixture
def h1():
    return gen_h1(5, 3)


@pytest.fixture
def acceptance_report():
    def report(label: str, ok: bool, detail: str = ""):
        line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

import sys
from pathlib import Path

import pytest

from acctab.markup import parse_text

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def table1_markup() -> str:
    return (GOLDEN / "table1.tbl").read_text(encoding="utf-8")


@pytest.fixture
def table1(table1_markup):
    return parse_text(table1_markup)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    RESULTS = getattr(module, "RESULTS", None)
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        ok, name = RESULTS[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {name}")

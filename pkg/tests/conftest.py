import pytest

from cpalaser.solver import find_selfdual
from cpalaser.table1 import K_TABLE, TABLE1, verify_table1

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def table_reports():
    return verify_table1()


@pytest.fixture(scope="session")
def table_searches():
    """All accepted roots from the full seed-and-refine search for each row."""
    return [find_selfdual(r.approx[0], r.approx[2], K_TABLE) for r in TABLE1]


@pytest.fixture(scope="session")
def accepted_solutions(table_searches):
    return [s for res in table_searches for s in res.solutions]


@pytest.fixture(scope="session")
def row_roots(table_reports):
    """Refined root nearest each table row, ``kappa1 > 0`` member."""
    return [r.solution for r in table_reports]


@pytest.fixture
def record():
    def _record(label, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


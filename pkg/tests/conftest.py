from pathlib import Path

import pytest

DATA = Path(__file__).resolve().parent.parent / "data"

# criterion id -> (passed, detail); filled by the acceptance tests
CRITERIA: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def record():
    def _record(cid: str, passed: bool, detail: str) -> bool:
        CRITERIA[cid] = (passed, detail)
        return passed
    return _record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(CRITERIA, key=lambda c: (int("".join(ch for ch in c if ch.isdigit())), c)):
        passed, detail = CRITERIA[cid]
        terminalreporter.write_line(f"criterion {cid}: {'PASS' if passed else 'FAIL'}  {detail}")

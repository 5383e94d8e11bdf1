"""Acceptance battery: one test per criterion, each printing its pass/fail line.

Run alone with ``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""

import sys

import pytest

from halfarc.verify import CRITERIA, run_criterion


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, capsys):
    result = run_criterion(number)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.line()


if __name__ == "__main__":
    failures = 0
    for num, *_ in CRITERIA:
        r = run_criterion(num)
        print(r.line(), flush=True)
        failures += not r.passed
    sys.exit(1 if failures else 0)

"""Acceptance criteria at their stated tolerances, one test per criterion.

Each test prints a single ``[PASS]``/``[FAIL]`` line; the lines are also
collected into a block at the end of the pytest terminal summary.
"""

import json

import pytest

from alphamod import acceptance


@pytest.mark.parametrize("number", sorted(acceptance.CRITERIA))
def test_criterion(number, capsys, record_property):
    res = acceptance.run_one(number)
    line = acceptance.format_line(res)
    record_property("acceptance_line", line)
    with capsys.disabled():
        print(f"\n{line}")
    assert res.passed, json.dumps(res.detail, default=str, indent=1)

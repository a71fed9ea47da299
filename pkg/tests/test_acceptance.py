"""Acceptance criteria, one test each. Every test prints a single PASS/FAIL line."""

import pytest

from lieorder import verify


@pytest.mark.parametrize("criterion", sorted(verify.CRITERIA))
def test_criterion(criterion, capsys):
    found = verify.run_criterion(criterion)
    name = verify.CRITERIA[criterion][0]
    with capsys.disabled():
        print(f"\ncriterion {criterion:2d} {'PASS' if not found else 'FAIL'}: {name}")
    assert not found, "\n".join(str(m) for m in found[:20])

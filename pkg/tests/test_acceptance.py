"""Acceptance gate: every published result the package reproduces, one
pass/fail line each (printed in the terminal summary)."""
import pytest

from packcolor import repro

RESULTS = []

DESK = [n for n, tier, _ in repro.CRITERIA if tier == "desk"]
LONG = [n for n, tier, _ in repro.CRITERIA if tier == "long"]


def _run(name):
    res = repro.check(name)
    RESULTS.append(res)
    assert res.passed, res.detail


@pytest.mark.parametrize("name", DESK)
def test_criterion(name):
    _run(name)


@pytest.mark.long
@pytest.mark.parametrize("name", LONG)
def test_criterion_long(name):
    _run(name)

"""Acceptance criteria 1-12, each at exact equality.  One PASS/FAIL line per criterion goes to the terminal."""

import pytest

from matcat.acceptance import CRITERIA, Builtins, run_criterion


@pytest.fixture(scope="module")
def builtins():
    return Builtins()


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, builtins, capsys):
    res = run_criterion(number, builtins)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.detail


def test_corrupted_builtin_gives_named_failures(capsys):
    b = Builtins(corrupt=True)
    results = [run_criterion(n, b) for n in (8, 9, 10)]
    with capsys.disabled():
        for r in results:
            print("\n[corrupted A2] " + r.line())
    assert all(not r.passed and r.detail for r in results)

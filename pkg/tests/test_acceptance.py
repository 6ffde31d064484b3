"""Acceptance battery: one test per numbered criterion at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -s`` or directly as a script to get
one pass/fail line per criterion.
"""
from __future__ import annotations

import sys

import pytest

from su2pfaff.checks import CHECKS, RunConfig, run_check

pytestmark = pytest.mark.acceptance


def _line(i, res) -> str:
    return f"criterion {i:2d} {res.name}: {res.status.upper()} (max residual {res.max_residual:.3e})"


@pytest.mark.parametrize("index", range(1, len(CHECKS) + 1), ids=[c.name for c in CHECKS])
def test_criterion(index, capsys):
    res = run_check(CHECKS[index - 1], RunConfig())
    with capsys.disabled():
        print("\n" + _line(index, res))
    assert res.passed, res.details.get("failures")


if __name__ == "__main__":
    bad = 0
    for i, spec in enumerate(CHECKS, 1):
        res = run_check(spec, RunConfig())
        print(_line(i, res))
        bad += not res.passed
    sys.exit(1 if bad else 0)

"""Acceptance criteria 1-6.  Each runs cold in its own interpreter and prints one line.

Tolerance is exact equality after canonicalization for every identity.
"""

import json
import subprocess
import sys

import pytest

from _acceptance_checks import HERE, LIMITS, TITLES

LINES = []


def _line(n, res):
    limit = LIMITS[n]
    within = limit is None or res["seconds"] < limit
    ok = res["passed"] and within
    budget = "no time limit" if limit is None else f"limit {limit:.0f} s"
    text = (f"criterion {n} {'PASS' if ok else 'FAIL'}: {TITLES[n]}; {res['detail']}; "
            f"exact equality; {res['seconds']:.2f} s ({budget})")
    if res["failures"]:
        text += "; first failures: " + " | ".join(res["failures"])
    return ok, text


@pytest.mark.parametrize("n", sorted(LIMITS))
def test_criterion(n):
    out = subprocess.run([sys.executable, str(HERE / "_acceptance_checks.py"), str(n)],
                         capture_output=True, text=True)
    assert out.returncode == 0, out.stderr
    ok, text = _line(n, json.loads(out.stdout))
    print(text)
    LINES.append(text)
    assert ok, text

"""Each corrupted fixture changes one coefficient of a built-in one and must fail."""

import difflib
import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import pytest

from qpd.suites import run_suite

HERE = Path(__file__).parent / "fixtures"
BAD = sorted(HERE.glob("*-bad.txt"))


def suite_of(path: Path) -> str:
    return path.name[: -len("-bad.txt")]


def test_enough_controls():
    assert len(BAD) >= 4


@pytest.mark.parametrize("path", BAD, ids=suite_of)
def test_single_line_changed(path):
    good = resources.files("qpd").joinpath("fixtures", suite_of(path) + ".txt").read_text().splitlines()
    bad = path.read_text().splitlines()
    changed = [l for l in difflib.ndiff(good, bad) if l.startswith(("+ ", "- "))]
    assert len(changed) == 2, changed


@pytest.mark.parametrize("path", BAD, ids=suite_of)
def test_corrupted_fixture_fails(path):
    out = subprocess.run(
        [sys.executable, "-m", "qpd", "verify", suite_of(path), "--fixture", str(path), "--json"],
        capture_output=True, text=True)
    assert out.returncode == 1, out.stderr
    payload = json.loads(out.stdout)
    failed = [r for r in payload["results"] if r["status"] == "fail"]
    assert failed and all(r["residual"] not in (None, "", "0") for r in failed)


@pytest.mark.parametrize("path", BAD, ids=suite_of)
def test_pristine_fixture_passes(path):
    assert run_suite(suite_of(path)).passed

import json
import subprocess
import sys

import pytest

from qpd.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


def test_normalize(capsys):
    assert run(capsys, "normalize", "x*y - y*x") == (0, "2*i*hb*z", "")
    assert run(capsys, "normalize", "rho^-1 * rho")[:2] == (0, "1")


def test_derive(capsys):
    assert run(capsys, "derive", "dx", "x^2")[:2] == (0, "2*x")
    assert run(capsys, "derive", "dt0", "rho")[:2] == (0, "-i*hb*rho^-1")
    code, out, _ = run(capsys, "derive", "dt", "t")
    assert (code, out) == (0, "-i*hb^-1*t + 1")


def test_matrix(capsys):
    code, out, _ = run(capsys, "--json", "matrix", "2", "x")
    assert code == 0
    assert json.loads(out)["entries"] == [["x", "-hb"], ["-hb", "x"]]
    code, out, _ = run(capsys, "matrix", "4", "t")
    assert code == 0 and out.count("t + i*hb") == 4


def test_limit(capsys):
    assert run(capsys, "limit", "dt0(rho)")[:2] == (0, "0")
    assert run(capsys, "limit", "dx(rho)")[:2] == (0, "x*rho^-1")
    # dt is the shifted derivative: dt(rho) carries rho/(i hb), which has no limit
    code, _, err = run(capsys, "limit", "dt(rho)")
    assert code == 4 and "PoleError" in err


def test_json_everywhere(capsys):
    for argv in (["--json", "normalize", "x"], ["normalize", "x", "--json"]):
        code, out, _ = run(capsys, *argv)
        assert code == 0 and json.loads(out) == {"input": "x", "normal_form": "x"}


def test_parse_error_exit_code(capsys):
    code, out, _ = run(capsys, "--json", "normalize", "x + * y")
    assert code == 3
    payload = json.loads(out)
    assert (payload["line"], payload["column"]) == (1, 5)
    assert "NAME" in payload["expected"]
    assert run(capsys, "normalize", "foo")[0] == 3


def test_usage_errors(capsys):
    assert run(capsys, "matrix", "3", "x")[0] == 2
    assert run(capsys, "derive", "dw", "x")[0] == 2
    assert run(capsys, "verify", "nosuch")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "verify", "central", "--fixture", "/nonexistent/file")[0] == 2
    assert run(capsys, "verify", "inverse-c", "--alpha", "1,2")[0] == 2


def test_domain_errors(capsys):
    assert run(capsys, "verify", "inverse-c", "--alpha", "0,1,1,0")[0] == 4
    assert run(capsys, "normalize", "1/x")[0] == 4
    assert run(capsys, "derive", "dx", "rho^-1")[0] == 4


def test_verify_alpha(capsys):
    code, out, _ = run(capsys, "verify", "inverse-c", "--alpha", "0,0,0,1")
    assert code == 0
    assert out and all(line.startswith("PASS") for line in out.splitlines())


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "quaternions", "--json")
    payload = json.loads(out)
    assert code == 0 and payload["passed"] and payload["suite"] == "quaternions"
    assert {r["status"] for r in payload["results"]} == {"pass"}


def test_help_exits_zero(capsys):
    assert run(capsys, "--help")[0] == 0


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "qpd", "derive", "dz", "x*y"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "i*hb"


@pytest.mark.parametrize("name", ["qdouble", "central", "ch-rho", "inverse-b", "gradients", "classical-limits"])
def test_each_suite_passes(capsys, name):
    assert run(capsys, "verify", name)[0] == 0

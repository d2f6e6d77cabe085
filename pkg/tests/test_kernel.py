import os
import subprocess
import sys

import pytest

from qpd import _kernel_py, kernel, randgen
from qpd.ncalgebra import _RHO_RULE, _U2_COMM, U2_EXT, gl

compiled = pytest.importorskip("qpd._kernel")


def _tables(mod, alg):
    return mod.Tables(alg.n, alg.comm, alg.rho_rule)


@pytest.mark.parametrize("alg", [U2_EXT, gl(2), gl(3)], ids=lambda a: a.kind + str(a.N or ""))
def test_backends_agree(alg):
    r = randgen.rng(7)
    tp, tc = _tables(_kernel_py, alg), _tables(compiled, alg)
    for _ in range(60):
        a = randgen.poly(r, alg, max_deg=3, nterms=4).terms
        b = randgen.poly(r, alg, max_deg=3, nterms=4).terms
        if alg.has_rho:
            a = {k[:-2] + (r.randint(0, 3), k[-1]): v for k, v in a.items()}
        assert _kernel_py.mul(tp, a, b) == compiled.mul(tc, a, b)


def test_rho_tables_match_algebra():
    assert U2_EXT.comm is _U2_COMM
    assert U2_EXT.rho_rule is _RHO_RULE


def test_backend_selected():
    assert kernel.BACKEND == ("python" if os.environ.get("QPD_PURE_PYTHON") else "cython")


def test_pure_python_override():
    env = dict(os.environ, QPD_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from qpd import kernel; from qpd.expr import normalize; "
         "print(kernel.BACKEND, normalize('y*x'))"],
        env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split(None, 1) == ["python", "x*y - 2*i*hb*z\n"]

"""Acceptance criteria as standalone checks.

``python _acceptance_checks.py N`` runs criterion N in a fresh interpreter and
prints one JSON object: passed, seconds, detail.  Timing includes imports and
cold caches.
"""

import json
import subprocess
import sys
import time
from pathlib import Path

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))

LIMITS = {1: 10.0, 2: 30.0, 3: 20.0, 4: 60.0, 5: None, 6: 30.0}
TITLES = {
    1: "quantum double suite, N=2 and N=3",
    2: "Leibniz table, quaternions, homomorphism, route agreement",
    3: "central extension and the quantum radius",
    4: "Cayley-Hamilton inversion and 1/(rho - b)",
    5: "negative controls on corrupted fixtures",
    6: "property suites",
}


def _failed(rep):
    return [f"{r.identity}: {r.residual}" for r in rep.failures()]


def criterion1():
    from qpd.qdouble import double_report
    bad, n = [], 0
    for N in (2, 3):
        rep = double_report(N)
        n += len(rep.results)
        bad += _failed(rep)
    return not bad, f"{n} checks", bad


def criterion2():
    from qpd.qpdmap import LEIB_TABLE
    from qpd.suites import Fixture, run_suite
    assert len(LEIB_TABLE) == 16 and len(Fixture.default("leibniz-table").entries) == 16
    bad, n = [], 0
    for name in ("leibniz-table", "quaternions"):
        rep = run_suite(name)
        n += len(rep.results)
        bad += _failed(rep)
    return not bad, f"{n} checks (16 relations on degree <= 3, 100 random pairs, 100 random polys)", bad


def criterion3():
    from qpd.central import sign_choice_audit
    from qpd.suites import run_suite
    rep = run_suite("central")
    bad = _failed(rep)
    winners = [k for k, v in sign_choice_audit(1).items() if all(v.values())]
    if winners != [(1, 1)]:
        bad.append(f"sign audit selected {winners}")
    return not bad, f"{len(rep.results)} checks, audit selects {winners}", bad


def criterion4():
    from qpd.suites import run_suite
    bad, n = [], 0
    for name in ("ch-rho", "inverse-b", "inverse-c", "gradients", "classical-limits"):
        rep = run_suite(name)
        n += len(rep.results)
        bad += _failed(rep)
    return not bad, f"{n} checks over alpha (0,0,0,1), (0,1,0,0), (0,3/5,4/5,0)", bad


def criterion5():
    fixtures = sorted((HERE / "fixtures").glob("*-bad.txt"))
    bad = []
    for path in fixtures:
        suite = path.name[: -len("-bad.txt")]
        out = subprocess.run([sys.executable, "-m", "qpd", "verify", suite, "--fixture", str(path), "--json"],
                             capture_output=True, text=True)
        if out.returncode != 1:
            bad.append(f"{suite}: exit {out.returncode}")
            continue
        failed = [r for r in json.loads(out.stdout)["results"] if r["status"] == "fail"]
        if not failed or any(r["residual"] in (None, "", "0") for r in failed):
            bad.append(f"{suite}: no nonzero residual")
    if len(fixtures) < 4:
        bad.append(f"only {len(fixtures)} corrupted fixtures")
    return not bad, f"{len(fixtures)} corrupted fixtures, all exit 1 with a residual", bad


def _field_failures(count=200):
    from qpd import randgen
    from qpd.scalars import HbarScalar

    r = randgen.rng()

    def hb_elem():
        num = sum((HbarScalar(randgen.coeff(r)) * HbarScalar.hbar(k) for k in range(3)), HbarScalar(0))
        den = HbarScalar(randgen.coeff(r)) + HbarScalar(randgen.coeff(r)) * HbarScalar.hbar(1)
        return num / den

    bad = []
    for k in range(count):
        make = (lambda: randgen.coeff(r)) if k % 2 else hb_elem
        a, b, c = make(), make(), make()
        one, zero = type(a)(1), type(a)(0)
        ok = (a + b == b + a and a * b == b * a and (a + b) + c == a + (b + c)
              and (a * b) * c == a * (b * c) and a * (b + c) == a * b + a * c
              and a + zero == a and a * one == a and a + (-a) == zero
              and (a.is_zero() or a * a.inverse() == one))
        if not ok:
            bad.append(f"field axioms: {a}, {b}, {c}")
    return bad


def criterion6():
    import _props
    bad = (_props.confluence_failures(200) + _props.associativity_failures(200)
           + _props.jacobi_failures() + _field_failures(200))
    return not bad, "200 words, 200 triples, Jacobi, 200 field triples", bad


def run(n):
    t0 = time.perf_counter()
    ok, detail, bad = globals()[f"criterion{n}"]()
    return {"passed": bool(ok), "seconds": time.perf_counter() - t0, "detail": detail, "failures": bad[:5]}


if __name__ == "__main__":
    print(json.dumps(run(int(sys.argv[1]))))

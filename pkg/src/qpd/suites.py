"""Named verification suites.

Each suite runs the engine checks for one topic and compares the engine with
the expected values stored in a fixture file.  Fixture files hold one
``key = expr`` entry per line; ``#`` starts a comment.  Keys are either names
the suite looks up or, where the suite allows it, expressions whose value must
equal the right-hand side.
"""

from __future__ import annotations

import re
from fractions import Fraction
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from qpd import central, inversion, qdouble, qpdmap, randgen
from qpd.errors import ParseError
from qpd.expr import BinOp, evaluate, evaluate_generic, gl_rank, parse
from qpd.inversion import ALG, AlgebraVector3, AlphaVector, CommPoly, DEFAULT_ALPHAS
from qpd.ncalgebra import U2, NCPoly, gl
from qpd.qpdmap import DerivMatrix
from qpd.report import Report
from qpd.scalars import GaussRational

I = GaussRational(0, 1)
RANDOM_SAMPLES = 100


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------

@dataclass
class Entry:
    key: str
    value: str
    line: int


class Fixture:
    def __init__(self, entries: Sequence[Entry], source: str = "<fixture>"):
        self.entries = list(entries)
        self.source = source
        self._by_key = {e.key: e for e in self.entries}

    @classmethod
    def parse_text(cls, text: str, source: str = "<fixture>") -> "Fixture":
        entries = []
        for n, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParseError(f"{source}: expected 'key = expr'", n, 1, ["="])
            key, value = line.split("=", 1)
            entries.append(Entry(" ".join(key.split()), value.strip(), n))
        return cls(entries, source)

    @classmethod
    def load(cls, path) -> "Fixture":
        p = Path(path)
        return cls.parse_text(p.read_text(), str(p))

    @classmethod
    def default(cls, suite: str) -> "Fixture":
        text = resources.files("qpd").joinpath("fixtures", f"{suite}.txt").read_text()
        return cls.parse_text(text, f"{suite}.txt")

    def __contains__(self, key):
        return key in self._by_key

    def get(self, key: str) -> Entry:
        try:
            return self._by_key[key]
        except KeyError:
            raise ParseError(f"{self.source}: missing entry {key!r}", 1, 1, [key]) from None

    def others(self, names) -> List[Entry]:
        return [e for e in self.entries if e.key not in names]


def _reparse(err: ParseError, fx: Fixture, e: Entry) -> ParseError:
    return ParseError(f"{fx.source}: {err.message}", e.line, err.column, err.expected)


def _value(fx: Fixture, key: str, env: Optional[Dict[str, object]] = None) -> NCPoly:
    e = fx.get(key)
    try:
        tree = parse(e.value, env or ())
    except ParseError as err:
        raise _reparse(err, fx, e) from None
    return evaluate(tree, env)


def _comm_value(fx: Fixture, key: str) -> CommPoly:
    e = fx.get(key)
    atoms = {"rho": inversion.RHO_HAT, "b": inversion.B_HAT, "hb": inversion.HB_HAT, "i": CommPoly.const(I)}
    try:
        tree = parse(e.value, atoms)
    except ParseError as err:
        raise _reparse(err, fx, e) from None
    return evaluate_generic(tree, atoms, CommPoly.const(1))


def _identity_residual(lhs: NCPoly, rhs: NCPoly) -> NCPoly:
    if lhs.algebra.is_classical != rhs.algebra.is_classical:
        lhs, rhs = lhs.classical_limit(), rhs.classical_limit()
    return lhs - rhs


def _identity_checks(rep: Report, fx: Fixture, entries: Sequence[Entry]):
    """``expr = expr`` entries."""
    for e in entries:
        try:
            lt, rt = parse(e.key), parse(e.value)
        except ParseError as err:
            raise _reparse(err, fx, e) from None
        n = gl_rank(BinOp("-", lt, rt))
        alg = gl(n) if n else None
        rep.check(f"{e.key} = {e.value}",
                  lambda lt=lt, rt=rt, alg=alg: _identity_residual(evaluate(lt, algebra=alg), evaluate(rt, algebra=alg)))


def _alpha_env(alpha: AlphaVector) -> Dict[str, object]:
    return {"b": alpha.b(), "a0": alpha.a0, "a1": alpha.a1, "a2": alpha.a2, "a3": alpha.a3}


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def suite_qdouble(fx: Fixture, alphas) -> Report:
    rep = Report("qdouble")
    rep.extend(qdouble.double_report(2))
    rep.extend(qdouble.double_report(3))
    _identity_checks(rep, fx, fx.entries)
    return rep


_LEIB = re.compile(r"^\[\s*(d[txyz])\s*,\s*([txyz])\s*\]$")
_SIGNED = re.compile(r"^([+-]?\d+)\s*\*\s*(\w+)$")


def _signed(fx: Fixture, e: Entry, names) -> Tuple[int, str]:
    m = _SIGNED.match(e.value)
    if not m or m.group(2) not in names:
        raise ParseError(f"{fx.source}: expected 'sign*name'", e.line, 1, names)
    return int(m.group(1)), m.group(2)


def suite_leibniz(fx: Fixture, alphas) -> Report:
    table = []
    for e in fx.entries:
        m = _LEIB.match(e.key)
        if not m:
            raise ParseError(f"{fx.source}: expected '[dX,g]'", e.line, 1, ["[dX,g]"])
        sign, d2 = _signed(fx, e, ("dt", "dx", "dy", "dz"))
        table.append((m.group(1), m.group(2), sign, d2))
    rep = Report("leibniz-table")
    rep.extend(qpdmap.verify_leib_table(table=tuple(table)))
    r = randgen.rng()
    samples = [randgen.poly(r, U2) for _ in range(RANDOM_SAMPLES)]
    pairs = [(randgen.poly(r, U2), randgen.poly(r, U2)) for _ in range(RANDOM_SAMPLES)]
    rep.check("hatt4(ab) = hatt4(a) hatt4(b), dmat2(ab) = dmat2(a) dmat2(b)",
              lambda: qpdmap.homomorphism_residuals(pairs))
    rep.extend(qpdmap.cross_validate_with_double(samples))
    rep.check("hatt4 and dmat2 extract the same derivatives", lambda: qpdmap.consistency_2_vs_4(samples))
    return rep


def suite_quaternions(fx: Fixture, alphas) -> Report:
    mats = {"A": qpdmap.A, "B": qpdmap.B, "C": qpdmap.C, "I": DerivMatrix.identity(4)}
    rep = Report("quaternions")
    for e in fx.entries:
        parts = [p.strip() for p in e.key.split("*")]
        if len(parts) != 2 or any(p not in mats for p in parts):
            raise ParseError(f"{fx.source}: expected 'X*Y'", e.line, 1, ["A", "B", "C"])
        sign, name = _signed(fx, e, tuple(mats))
        rep.check(f"{e.key} = {e.value}",
                  lambda p=parts, s=sign, n=name: mats[p[0]] * mats[p[1]] - mats[n] * ALG.const(s))
    rep.check("M^2 - 2i hb M + Cas I = 0", qpdmap.m_matrix_ch_residual)
    return rep


def suite_central(fx: Fixture, alphas) -> Report:
    rep = Report("central")
    rep.extend(central.central_report(1))
    rep.extend(central.central_report(-1))
    _identity_checks(rep, fx, fx.entries)
    return rep


_CH_NAMES = ("ch_linear", "ch_constant", "root1", "root2")


def suite_ch_rho(fx: Fixture, alphas) -> Report:
    rep = Report("ch-rho")
    R = central.dmat_rho()
    lin, const = _value(fx, "ch_linear"), _value(fx, "ch_constant")
    r1, r2 = _value(fx, "root1"), _value(fx, "root2")
    rep.check("D(rho) = dmat2(rho)", lambda: R - qpdmap.dmat2(ALG.rho(1)))
    rep.check("D(rho)^2 + ch_linear D(rho) + ch_constant I = 0",
              lambda: R * R + R * lin + DerivMatrix.scalar(2, const))
    rep.check("(D(rho) - root1 I)(D(rho) - root2 I) = 0",
              lambda: (R - DerivMatrix.scalar(2, r1)) * (R - DerivMatrix.scalar(2, r2)))
    rc = ALG.rho(1).classical_limit()
    Rc = R.classical_limit()
    rep.check("hb = 0: (D(r) - r I)^2 = 0",
              lambda: (Rc - DerivMatrix.scalar(2, rc, rc.algebra)) * (Rc - DerivMatrix.scalar(2, rc, rc.algebra)))
    _identity_checks(rep, fx, fx.others(_CH_NAMES))
    return rep


def suite_inverse_b(fx: Fixture, alphas) -> Report:
    rep = Report("inverse-b")
    b_alphas = list(alphas) if alphas else list(DEFAULT_ALPHAS) + [
        AlphaVector.of(1, 0, 0, 1), AlphaVector.of(0, 1, 1, 0), AlphaVector.of(Fraction(2, 3), -1, Fraction(1, 2), 2)]
    for a in b_alphas:
        a.require_nondegenerate()
        env = _alpha_env(a)
        al = a.to_list()
        shift = _value(fx, "shift", env)
        N = DerivMatrix([[_value(fx, "N11", env), _value(fx, "N12", env)],
                         [_value(fx, "N21", env), _value(fx, "N22", env)]])
        den = _value(fx, "den", env)
        chc = _value(fx, "ch_constant", env)
        hb = ALG.hbar(1)
        D = qpdmap.dmat2(a.b())
        num = DerivMatrix.scalar(2, shift) + N * hb
        rep.check("dmat2(b) = shift I - hb N", lambda D=D, shift=shift, N=N: D - (DerivMatrix.scalar(2, shift) - N * hb), alpha=al)
        rep.check("D(b) (shift I + hb N) = den I", lambda D=D, num=num, den=den: D * num - DerivMatrix.scalar(2, den), alpha=al)
        rep.check("(shift I + hb N) D(b) = den I", lambda D=D, num=num, den=den: num * D - DerivMatrix.scalar(2, den), alpha=al)
        rep.check("(D(b) - shift I)^2 = ch_constant I",
                  lambda D=D, shift=shift, chc=chc: (D - DerivMatrix.scalar(2, shift)) * (D - DerivMatrix.scalar(2, shift)) - DerivMatrix.scalar(2, chc),
                  alpha=al)
        rep.check("N^2 = |a|^2 I", lambda a=a: inversion.dmat_b_residuals(a)["N^2 = |a|^2 I"], alpha=al)
        rep.check("hb = 0: D(b)^-1 = b^-1 I", lambda a=a: inversion.inverse_b_residuals(a)["hb = 0: D(b)^-1 = b^-1 I"], alpha=al)
    return rep


def _inverse_c_fixture(fx: Fixture):
    matrix = [[_comm_value(fx, f"M{i}{j}") for j in range(1, 5)] for i in range(1, 5)]
    rhs = [_comm_value(fx, f"rhs{i}") for i in range(1, 5)]
    nums = [_comm_value(fx, f"num{k}") for k in range(4)]
    return (matrix, rhs), nums, _comm_value(fx, "den")


def suite_inverse_c(fx: Fixture, alphas) -> Report:
    rep = Report("inverse-c")
    system, nums, den = _inverse_c_fixture(fx)
    for k, ok in inversion.system_comparison(system).items():
        rep.check(f"derived system {k} equals the fixture row up to sign", lambda ok=ok: ok)
    for k, r in inversion.cramer_residuals(nums, den).items():
        rep.check(f"Cramer {k}", lambda r=r: r)
    for k, ok in inversion.fraction_criterion_sanity().items():
        rep.check(f"fraction equality {k}", lambda ok=ok: ok)
    for a in alphas or DEFAULT_ALPHAS:
        al = a.to_list()
        a.require_unit()
        rep.check("[D(rho), D(b)] = 0", lambda a=a: inversion.commute_residual(a), alpha=al)
        rep.check("(D(b) - b I)^2 = hb^2 I", lambda a=a: inversion.ch_b_residual(a), alpha=al)
        for k, r in inversion.scalar_commutation_residuals(a).items():
            rep.check(k, lambda r=r: r, alpha=al)
        for k, r in inversion.inverse_c_residuals(a, 0, nums, den).items():
            rep.check(k, lambda r=r: r, alpha=al)
    return rep


def _grad_fixture(fx: Fixture, a: AlphaVector, with_dt: bool = True):
    env = _alpha_env(a)
    vec = AlgebraVector3(tuple(_value(fx, f"d{c}_num", env) for c in "xyz"))
    gden = _value(fx, "grad_den", env)
    if not with_dt:
        return vec, gden
    return _value(fx, "dt_num", env), _value(fx, "dt_den", env), vec, gden


def suite_gradients(fx: Fixture, alphas) -> Report:
    rep = Report("gradients")
    for k, r in inversion.cross_product_residuals().items():
        rep.check(k, lambda r=r: r)
    for a in alphas or DEFAULT_ALPHAS:
        a.require_unit()
        shown = _grad_fixture(fx, a)
        for k, r in inversion.gradient_residuals(a, 0, shown).items():
            rep.check(k, lambda r=r: r, alpha=a.to_list())
    return rep


_CL_NAMES = ("dx_num", "dy_num", "dz_num", "grad_den")


def suite_classical(fx: Fixture, alphas) -> Report:
    rep = Report("classical-limits")
    for a in alphas or DEFAULT_ALPHAS:
        a.require_unit()
        target = _grad_fixture(fx, a, with_dt=False)
        for k, r in inversion.classical_gradient_residuals(a, target).items():
            rep.check(k, lambda r=r: r, alpha=a.to_list())
    for k, r in inversion.ch_rho_residuals().items():
        if k.startswith("hb = 0"):
            rep.check(k, lambda r=r: r)
    for k, r in central.rho_classical_residuals().items():
        rep.check(k, lambda r=r: r)
    rep.check("dt mu -> 0, dx mu -> -4x/mu",
              lambda: all(central._classical_limits_hold(central.hatt_mu(1), 1).values()))
    _identity_checks(rep, fx, fx.others(_CL_NAMES))
    return rep


SUITES: Dict[str, Callable[[Fixture, Sequence[AlphaVector]], Report]] = {
    "qdouble": suite_qdouble,
    "leibniz-table": suite_leibniz,
    "quaternions": suite_quaternions,
    "central": suite_central,
    "ch-rho": suite_ch_rho,
    "inverse-b": suite_inverse_b,
    "inverse-c": suite_inverse_c,
    "gradients": suite_gradients,
    "classical-limits": suite_classical,
}
SUITE_NAMES = tuple(SUITES) + ("all",)


def run_suite(name: str, fixture: Optional[Fixture] = None, alphas: Sequence[AlphaVector] = ()) -> Report:
    if name == "all":
        if fixture is not None:
            raise ValueError("a fixture file applies to a single suite")
        rep = Report("all")
        for n in SUITES:
            rep.extend(run_suite(n, None, alphas))
        return rep
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](fixture or Fixture.default(name), list(alphas))

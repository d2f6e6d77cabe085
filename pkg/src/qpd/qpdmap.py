"""Derivative matrices on U(u(2)_h): the 4x4 map ``hatt`` and the 2x2 map ``D``.

Layouts (``dt`` is the shifted t-derivative ``∂_t + (1/(i*hb)) id``)::

    hatt = i*hb * | dt   dx   dy   dz |        D = i*hb * | dt + i dz   i dx - dy |
                  | -dx  dt  -dz   dy |                   | i dx + dy   dt - i dz |
                  | -dy  dz   dt  -dx |
                  | -dz -dy   dx   dt |

Both maps are multiplicative and are computed from the generator images;
the same matrices are also rebuilt from the quantum double action so the two
constructions can be compared.
"""

from __future__ import annotations

import json
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Callable, Dict, List, Sequence

from qpd.ncalgebra import (
    U2,
    U2_EXT,
    NCPoly,
    basis_change_gl2_to_u2,
    basis_change_u2_to_gl2,
    gl,
)
from qpd.qdouble import act
from qpd.report import Report
from qpd.scalars import GaussRational, PoleError

I = GaussRational(0, 1)
DERIVATIVES = ("dt", "dx", "dy", "dz")


class DerivMatrix:
    """Square matrix with NCPoly entries over U2_EXT."""

    __slots__ = ("entries",)

    def __init__(self, entries: Sequence[Sequence[NCPoly]]):
        self.entries = [list(row) for row in entries]

    @property
    def size(self) -> int:
        return len(self.entries)

    @classmethod
    def scalar(cls, size: int, c, alg=U2_EXT) -> "DerivMatrix":
        z = alg.zero()
        cp = c if isinstance(c, NCPoly) else alg.const(c)
        return cls([[cp if i == j else z for j in range(size)] for i in range(size)])

    @classmethod
    def identity(cls, size: int) -> "DerivMatrix":
        return cls.scalar(size, 1)

    @classmethod
    def constant(cls, rows, alg=U2_EXT) -> "DerivMatrix":
        return cls([[alg.const(v) for v in row] for row in rows])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def map(self, f: Callable[[NCPoly], NCPoly]) -> "DerivMatrix":
        return DerivMatrix([[f(e) for e in row] for row in self.entries])

    def __add__(self, other):
        if not isinstance(other, DerivMatrix):
            other = DerivMatrix.scalar(self.size, other)
        return DerivMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    __radd__ = __add__

    def __neg__(self):
        return self.map(lambda e: -e)

    def __sub__(self, other):
        if not isinstance(other, DerivMatrix):
            other = DerivMatrix.scalar(self.size, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, DerivMatrix):
            n = self.size
            A, B = self.entries, other.entries
            out = []
            for i in range(n):
                row = []
                for j in range(n):
                    acc = None
                    for k in range(n):
                        if A[i][k].terms and B[k][j].terms:
                            p = A[i][k] * B[k][j]
                            acc = p if acc is None else acc + p
                    row.append(acc if acc is not None else A[i][j].algebra.zero())
                out.append(row)
            return DerivMatrix(out)
        # scalar or central element placed on the right of each entry
        return self.map(lambda e: e * other)

    def __rmul__(self, other):
        return self.map(lambda e: other * e)

    def __pow__(self, p: int) -> "DerivMatrix":
        if p < 0:
            raise ValueError("negative matrix powers are not supported")
        out = DerivMatrix.identity(self.size)
        for _ in range(p):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def __eq__(self, other):
        if not isinstance(other, DerivMatrix):
            return NotImplemented
        return self.size == other.size and (self - other).is_zero()

    __hash__ = None

    def transpose(self) -> "DerivMatrix":
        return DerivMatrix([list(col) for col in zip(*self.entries)])

    def trace(self) -> NCPoly:
        out = self.entries[0][0]
        for i in range(1, self.size):
            out = out + self.entries[i][i]
        return out

    def classical_limit(self) -> "DerivMatrix":
        return self.map(lambda e: e.classical_limit())

    def canonical(self) -> "DerivMatrix":
        return self.map(lambda e: e.canonical())

    def nonzero_entries(self) -> Dict[tuple, NCPoly]:
        return {(i + 1, j + 1): e for i, row in enumerate(self.entries) for j, e in enumerate(row) if not e.is_zero()}

    def to_strings(self) -> List[List[str]]:
        return [[str(e.canonical()) for e in row] for row in self.entries]

    def pretty(self) -> str:
        cells = self.to_strings()
        width = [max(len(cells[i][j]) for i in range(self.size)) for j in range(self.size)]
        lines = []
        for row in cells:
            lines.append("[ " + "  ".join(c.ljust(w) for c, w in zip(row, width)) + " ]")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps({"size": self.size, "entries": self.to_strings()})

    __str__ = pretty

    def __repr__(self):
        return f"DerivMatrix({self.to_strings()})"


def _embed(a: NCPoly) -> NCPoly:
    if a.algebra is U2:
        return NCPoly(U2_EXT, a.terms)
    if a.algebra is not U2_EXT:
        raise ValueError("expected an element of U(u(2)_h)")
    return a


# ---------------------------------------------------------------------------
# the quaternion units
# ---------------------------------------------------------------------------

A_ROWS = ((0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, -1), (0, 0, 1, 0))
B_ROWS = ((0, 0, 1, 0), (0, 0, 0, 1), (-1, 0, 0, 0), (0, -1, 0, 0))
C_ROWS = ((0, 0, 0, 1), (0, 0, -1, 0), (0, 1, 0, 0), (-1, 0, 0, 0))

A = DerivMatrix.constant(A_ROWS)
B = DerivMatrix.constant(B_ROWS)
C = DerivMatrix.constant(C_ROWS)


def quaternion_table_check() -> Report:
    rep = Report("quaternion table")
    Id = DerivMatrix.identity(4)
    names = {"A": A, "B": B, "C": C}
    for n in names:
        rep.check(f"{n}^2 = -I", lambda n=n: names[n] * names[n] + Id)
    for x, y, z in (("A", "B", "C"), ("B", "C", "A"), ("C", "A", "B")):
        rep.check(f"{x}{y} = {z}", lambda x=x, y=y, z=z: names[x] * names[y] - names[z])
        rep.check(f"{y}{x} = -{z}", lambda x=x, y=y, z=z: names[y] * names[x] + names[z])
    return rep


def m_matrix() -> DerivMatrix:
    """M = xA + yB + zC."""
    t, x, y, z = U2_EXT.gens()
    return A * x + B * y + C * z


def m_matrix_ch_residual() -> DerivMatrix:
    t, x, y, z = U2_EXT.gens()
    M = m_matrix()
    return M * M - M * U2_EXT.hbar(1).scale(2 * I) + DerivMatrix.scalar(4, x * x + y * y + z * z)


# ---------------------------------------------------------------------------
# generator images and the multiplicative extension
# ---------------------------------------------------------------------------

def _ihb(alg=U2_EXT) -> NCPoly:
    return alg.hbar(1).scale(I)


@lru_cache(maxsize=None)
def _gen_images4():
    t, x, y, z = U2_EXT.gens()
    ih = _ihb()
    Id = DerivMatrix.identity(4)
    return (Id * (t + ih), Id * x + A * ih, Id * y + B * ih, Id * z + C * ih)


@lru_cache(maxsize=None)
def _gen_images2():
    t, x, y, z = U2_EXT.gens()
    hb = U2_EXT.hbar(1)
    ih = _ihb()
    zero = U2_EXT.zero()
    return (
        DerivMatrix([[t + ih, zero], [zero, t + ih]]),
        DerivMatrix([[x, -hb], [-hb, x]]),
        DerivMatrix([[y, -ih], [ih, y]]),
        DerivMatrix([[z - hb, zero], [zero, z + hb]]),
    )


class _MultiplicativeMap:
    """Extension of generator images to normal-ordered elements, memoized per monomial."""

    def __init__(self, size: int, images: Callable, rho_image: Callable):
        self.size = size
        self.images = images
        self.rho_image = rho_image
        self.cache: Dict[tuple, DerivMatrix] = {}

    def mono(self, exps: tuple, r: int) -> DerivMatrix:
        key = exps + (r,)
        res = self.cache.get(key)
        if res is not None:
            return res
        if r < 0:
            raise PoleError("the derivative matrix of a negative rho power is not polynomial")
        if not any(exps) and r == 0:
            res = DerivMatrix.identity(self.size)
        elif r > 0:
            res = self.mono(exps, r - 1) * self.rho_image()
        else:
            k = max(g for g in range(4) if exps[g])
            lst = list(exps)
            lst[k] -= 1
            res = self.mono(tuple(lst), 0) * self.images()[k]
        self.cache[key] = res
        return res

    def __call__(self, a: NCPoly) -> DerivMatrix:
        a = _embed(a)
        n = U2_EXT.n
        grouped: Dict[tuple, dict] = {}
        for key, c in a.terms.items():
            grouped.setdefault(key[:n + 1], {})[key] = c
        out = DerivMatrix.scalar(self.size, 0)
        for (*exps, r), terms in grouped.items():
            coeff = NCPoly(U2_EXT, {(0, 0, 0, 0, 0, k[n + 1]): c for k, c in terms.items()})
            out = out + self.mono(tuple(exps), r) * coeff
        return out


def _rho4():
    from qpd.central import hatt_rho
    return hatt_rho()


def _rho2():
    from qpd.central import dmat_rho
    return dmat_rho()


_HATT4 = _MultiplicativeMap(4, _gen_images4, _rho4)
_DMAT2 = _MultiplicativeMap(2, _gen_images2, _rho2)


def hatt4(a: NCPoly) -> DerivMatrix:
    """The 4x4 derivative matrix of a."""
    return _HATT4(a)


def dmat2(a: NCPoly) -> DerivMatrix:
    """The 2x2 derivative matrix of a."""
    return _DMAT2(a)


# ---------------------------------------------------------------------------
# extraction of individual derivatives
# ---------------------------------------------------------------------------

def _inv_ihb():
    return U2_EXT.hbar(-1).scale(-I)


def from_hatt4(m: DerivMatrix) -> Dict[str, NCPoly]:
    inv = _inv_ihb()
    return {"dt": m[0, 0] * inv, "dx": m[0, 1] * inv, "dy": m[0, 2] * inv, "dz": m[0, 3] * inv}


def from_dmat2(m: DerivMatrix) -> Dict[str, NCPoly]:
    half_hb_inv = U2_EXT.hbar(-1).scale(GaussRational(1, 0) / 2)
    return {
        "dt": (m[0, 0] + m[1, 1]) * _inv_ihb().scale(GaussRational(1, 0) / 2),
        "dz": (m[1, 1] - m[0, 0]) * half_hb_inv,
        "dx": -(m[0, 1] + m[1, 0]) * half_hb_inv,
        "dy": (m[1, 0] - m[0, 1]) * _inv_ihb().scale(GaussRational(1, 0) / 2),
    }


def unshift_t(dt_value: NCPoly, a: NCPoly) -> NCPoly:
    """∂_t a from ∂̂_t a."""
    return dt_value - _embed(a) * _inv_ihb()


def extract_qpd(name: str, a: NCPoly, via: str = "hatt4") -> NCPoly:
    """One derivative of a: ``dt`` (shifted), ``dt0`` (unshifted), ``dx``, ``dy``, ``dz``."""
    base = "dt" if name == "dt0" else name
    if base not in DERIVATIVES:
        raise ValueError(f"unknown derivative {name!r}")
    if via == "hatt4":
        vals = from_hatt4(hatt4(a))
    elif via == "dmat2":
        vals = from_dmat2(dmat2(a))
    elif via == "sigma":
        return sigma_qpd(name, a)
    else:
        raise ValueError(f"unknown route {via!r}")
    v = vals[base]
    return unshift_t(v, a) if name == "dt0" else v


# ---------------------------------------------------------------------------
# the quantum double route
# ---------------------------------------------------------------------------

# gl(2) derivative indices: ∂_a = d[1,1], ∂_b = d[2,1], ∂_c = d[1,2], ∂_d = d[2,2]
_DA, _DB, _DC, _DD = 0, 2, 1, 3
# compact derivatives as combinations of gl(2) ones
_COMBOS = {
    "dt0": ((_DA, 1), (_DD, 1)),
    "dz": ((_DA, -I), (_DD, I)),
    "dx": ((_DB, -I), (_DC, -I)),
    "dy": ((_DC, 1), (_DB, -1)),
}


def _sigma_raw(a_gl: NCPoly, d: int) -> NCPoly:
    return act([d], a_gl, 2)


def sigma_qpd(name: str, a: NCPoly) -> NCPoly:
    """Derivative of a in U2 through the quantum double action on U(gl(2)_h)."""
    a = _embed(a)
    if a.min_rho() < 0 or any(k[4] for k in a.terms):
        raise ValueError("the quantum double route is defined on U(u(2)_h) only")
    a_gl = basis_change_u2_to_gl2(NCPoly(U2, a.terms))
    base = "dt0" if name in ("dt", "dt0") else name
    out = gl(2).zero()
    for d, c in _COMBOS[base]:
        out = out + _sigma_raw(a_gl, d).scale(c)
    res = NCPoly(U2_EXT, basis_change_gl2_to_u2(out).terms)
    if name == "dt":
        res = res + a * _inv_ihb()
    return res


def sigma_values(a: NCPoly) -> Dict[str, NCPoly]:
    return {n: sigma_qpd(n, a) for n in DERIVATIVES}


def hatt4_from_values(v: Dict[str, NCPoly]) -> DerivMatrix:
    ih = _ihb()
    dt, dx, dy, dz = v["dt"], v["dx"], v["dy"], v["dz"]
    rows = [[dt, dx, dy, dz], [-dx, dt, -dz, dy], [-dy, dz, dt, -dx], [-dz, -dy, dx, dt]]
    return DerivMatrix([[e * ih for e in row] for row in rows])


def dmat2_from_values(v: Dict[str, NCPoly]) -> DerivMatrix:
    ih = _ihb()
    dt, dx, dy, dz = v["dt"], v["dx"], v["dy"], v["dz"]
    rows = [[dt + dz.scale(I), dx.scale(I) - dy], [dx.scale(I) + dy, dt - dz.scale(I)]]
    return DerivMatrix([[e * ih for e in row] for row in rows])


def cross_validate_with_double(samples: Sequence[NCPoly]) -> Report:
    rep = Report("hatt4 vs quantum double")

    def run():
        bad = {}
        for a in samples:
            v = sigma_values(a)
            r4 = hatt4(a) - hatt4_from_values(v)
            r2 = dmat2(a) - dmat2_from_values(v)
            if not r4.is_zero():
                bad[f"hatt4({a})"] = r4
            if not r2.is_zero():
                bad[f"dmat2({a})"] = r2
        return bad

    rep.check("multiplicative maps = derivative matrices of the double", run)
    return rep


def consistency_2_vs_4(samples: Sequence[NCPoly]) -> dict:
    bad = {}
    for a in samples:
        v4, v2 = from_hatt4(hatt4(a)), from_dmat2(dmat2(a))
        for n in DERIVATIVES:
            r = v4[n] - v2[n]
            if not r.is_zero():
                bad[(str(a), n)] = r
    return bad


# ---------------------------------------------------------------------------
# the permutation table as operator identities
# ---------------------------------------------------------------------------

# (D1, generator, sign, D2):  D1 g - g D1 = sign * (h/2) D2
LEIB_TABLE = (
    ("dt", "t", 1, "dt"), ("dt", "x", -1, "dx"), ("dt", "y", -1, "dy"), ("dt", "z", -1, "dz"),
    ("dx", "t", 1, "dx"), ("dx", "x", 1, "dt"), ("dx", "y", 1, "dz"), ("dx", "z", -1, "dy"),
    ("dy", "t", 1, "dy"), ("dy", "x", -1, "dz"), ("dy", "y", 1, "dt"), ("dy", "z", 1, "dx"),
    ("dz", "t", 1, "dz"), ("dz", "x", 1, "dy"), ("dz", "y", -1, "dx"), ("dz", "z", 1, "dt"),
)


def monomial_basis(max_deg: int = 3) -> List[NCPoly]:
    out = [U2_EXT.one()]
    for d in range(1, max_deg + 1):
        for combo in combinations_with_replacement(range(4), d):
            out.append(U2_EXT.word(*combo))
    return out


def verify_leib_table(max_deg: int = 3, table=LEIB_TABLE) -> Report:
    rep = Report("permutation table")
    basis = monomial_basis(max_deg)
    half_h = U2_EXT.hbar(1).scale(I)  # h/2 = i hb
    memo: Dict[tuple, NCPoly] = {}

    def qpd(name, m):
        key = (name, frozenset(m.terms.items()))
        v = memo.get(key)
        if v is None:
            v = memo[key] = sigma_qpd(name, m)
        return v

    for d1, g, sign, d2 in table:
        gen = U2_EXT.gen(g)

        def run(d1=d1, gen=gen, sign=sign, d2=d2):
            bad = {}
            for m in basis:
                r = qpd(d1, gen * m) - gen * qpd(d1, m) - qpd(d2, m) * half_h.scale(sign)
                if not r.is_zero():
                    bad[str(m)] = r
            return bad

        lhs = f"{d1} {g} - {g} {d1}"
        rhs = f"{'' if sign > 0 else '-'}(h/2) {d2}"
        rep.check(f"{lhs} = {rhs}", run)

    def classical():
        bad = {}
        for u in ("t", "x", "y", "z"):
            name = "dt0" if u == "t" else f"d{u}"
            for v in ("t", "x", "y", "z"):
                gen = U2_EXT.gen(v)
                for m in basis:
                    r = qpd(name, gen * m) - gen * qpd(name, m)
                    if u == v:
                        r = r - m
                    r = r.classical_limit()
                    if not r.is_zero():
                        bad[(u, v, str(m))] = r
        return bad

    rep.check("hb = 0: [d_u, v] = delta_uv", classical)
    return rep


def homomorphism_residuals(pairs) -> dict:
    bad = {}
    for a, b in pairs:
        for name, f in (("hatt4", hatt4), ("dmat2", dmat2)):
            r = f(a * b) - f(a) * f(b)
            if not r.is_zero():
                bad[(name, str(a), str(b))] = r
    return bad


def relations_killed() -> dict:
    """hatt4 and dmat2 respect [x,y] = h z and its cyclic images, and t is central."""
    t, x, y, z = U2_EXT.gens()
    h = U2_EXT.hbar(1).scale(2 * I)
    rels = {"[x,y]-hz": (x, y, z), "[y,z]-hx": (y, z, x), "[z,x]-hy": (z, x, y)}
    bad = {}
    for name, f in (("hatt4", hatt4), ("dmat2", dmat2)):
        for rn, (p, q, r) in rels.items():
            res = f(p) * f(q) - f(q) * f(p) - f(r) * h
            if not res.is_zero():
                bad[(name, rn)] = res
        for g in (x, y, z):
            res = f(t) * f(g) - f(g) * f(t)
            if not res.is_zero():
                bad[(name, f"[t,{g}]")] = res
    return bad


def matrix_report(samples=(), pairs=()) -> Report:
    rep = Report("compact form")
    rep.extend(quaternion_table_check())
    rep.extend(verify_leib_table())
    rep.check("M^2 - 2i hb M + Cas I = 0", m_matrix_ch_residual)
    rep.check("hatt4 and dmat2 kill the defining relations", relations_killed)
    if pairs:
        rep.check("hatt4(ab) = hatt4(a) hatt4(b), dmat2(ab) = dmat2(a) dmat2(b)", lambda: homomorphism_residuals(pairs))
    if samples:
        rep.extend(cross_validate_with_double(samples))
        rep.check("hatt4 and dmat2 extract the same derivatives", lambda: consistency_2_vs_4(samples))
    return rep

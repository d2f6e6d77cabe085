"""Derivatives of inverses through Cayley-Hamilton identities of the 2x2 matrix ``D``.

With ``b = a0 t + a1 x + a2 y + a3 z`` and ``N = [[a3, a1 + i a2], [a1 - i a2, -a3]]``::

    D(b)   = (b + i hb a0) I - hb N,        N^2 = |a|^2 I
    D(b)^-1 = ((b + i hb a0) I + hb N) * ((b + i hb a0)^2 - |a|^2 hb^2)^-1

For ``c = rho - b`` with a unit vector ``a`` and ``a0 = 0`` the inverse is sought
as ``I a0' + D(rho) a1' + D(b) a2' + D(rho) D(b) a3'``.  The coefficients live in
the commutative ring generated by ``rho``, ``b`` and ``hb`` and are modelled by
:class:`CommPoly`.  Every fraction is a right fraction ``P * d^-1`` with ``d`` in
that ring, and equalities are decided by clearing denominators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from qpd.central import dmat_rho
from qpd.errors import DegenerateAlphaError, SingularSystemError
from qpd.ncalgebra import U2_EXT, NCPoly
from qpd.qpdmap import DerivMatrix, dmat2, from_dmat2, unshift_t
from qpd.report import Report
from qpd.scalars import GaussRational, Triple, t_add, t_from, t_mul, t_str

ALG = U2_EXT
I = GaussRational(0, 1)


# ---------------------------------------------------------------------------
# coefficient vectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AlphaVector:
    a0: GaussRational
    a1: GaussRational
    a2: GaussRational
    a3: GaussRational

    @classmethod
    def of(cls, *vals) -> "AlphaVector":
        if len(vals) == 1:
            vals = tuple(vals[0])
        if len(vals) != 4:
            raise ValueError("alpha needs four components")
        return cls(*(v if isinstance(v, GaussRational) else GaussRational(v) for v in vals))

    @classmethod
    def parse(cls, text: str) -> "AlphaVector":
        return cls.of(*(Fraction(p.strip()) for p in text.split(",")))

    @property
    def spatial(self) -> Tuple[GaussRational, GaussRational, GaussRational]:
        return (self.a1, self.a2, self.a3)

    @property
    def norm2(self) -> GaussRational:
        return self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3

    def is_unit(self) -> bool:
        return self.a0.is_zero() and self.norm2 == GaussRational(1)

    def require_nondegenerate(self):
        if self.norm2.is_zero():
            raise DegenerateAlphaError(f"a1^2 + a2^2 + a3^2 = 0 for alpha = {self}")

    def require_unit(self):
        if not self.is_unit():
            raise DegenerateAlphaError(f"alpha = {self} is not a unit vector with a0 = 0")

    def b(self) -> NCPoly:
        t, x, y, z = ALG.gens()
        return t.scale(self.a0) + x.scale(self.a1) + y.scale(self.a2) + z.scale(self.a3)

    def to_list(self) -> List[str]:
        return [str(v) for v in (self.a0, self.a1, self.a2, self.a3)]

    def __str__(self):
        return "(" + ",".join(self.to_list()) + ")"


# ---------------------------------------------------------------------------
# commutative coefficient ring Q(i)[rho, b, hb]
# ---------------------------------------------------------------------------

class CommPoly:
    """Polynomial in independent commuting symbols ``rho``, ``b``, ``hb``.

    Terms map exponent triples ``(r, s, k)`` (for ``rho^r b^s hb^k``) to
    normalized Gaussian rational triples.
    """

    __slots__ = ("terms",)
    VARS = ("rho", "b", "hb")

    def __init__(self, terms: Optional[Dict[tuple, Triple]] = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v[0] or v[1]}

    @classmethod
    def const(cls, c) -> "CommPoly":
        return cls({(0, 0, 0): t_from(c)})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "CommPoly":
        e = [0, 0, 0]
        e[cls.VARS.index(name)] = power
        return cls({tuple(e): (1, 0, 1)})

    def _lift(self, other) -> "CommPoly":
        return other if isinstance(other, CommPoly) else CommPoly.const(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = t_add(out[k], v) if k in out else v
        return CommPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return CommPoly({k: (-v[0], -v[1], v[2]) for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: Dict[tuple, Triple] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2])
                p = t_mul(v1, v2)
                out[k] = t_add(out[k], p) if k in out else p
        return CommPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = CommPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussRational)):
            other = CommPoly.const(other)
        if not isinstance(other, CommPoly):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def at_hbar_zero(self) -> "CommPoly":
        return CommPoly({k: v for k, v in self.terms.items() if k[2] == 0})

    def embed(self, alpha: AlphaVector) -> NCPoly:
        return embed_comm(self, alpha)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=lambda k: (-sum(k), tuple(-e for e in k))):
            c = self.terms[k]
            mono = "*".join(
                f"{n}^{e}" if e > 1 else n for n, e in zip(self.VARS, k) if e
            )
            cs = t_str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}" if c[0] and c[1] else f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


RHO_HAT = CommPoly.var("rho")
B_HAT = CommPoly.var("b")
HB_HAT = CommPoly.var("hb")


def embed_comm(p: CommPoly, alpha: AlphaVector) -> NCPoly:
    """rho^ -> rho, b^ -> a0 t + a1 x + a2 y + a3 z, hb -> hb."""
    b = alpha.b()
    out = ALG.zero()
    bpow = {0: ALG.one()}
    for (r, s, k), c in p.terms.items():
        if s not in bpow:
            top = max(bpow)
            acc = bpow[top]
            for j in range(top + 1, s + 1):
                acc = acc * b
                bpow[j] = acc
        out = out + bpow[s] * NCPoly(ALG, {(0, 0, 0, 0, r, k): c})
    return out


@dataclass
class CommFraction:
    num: CommPoly
    den: CommPoly

    def __eq__(self, other):
        if not isinstance(other, CommFraction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __str__(self):
        return f"({self.num}) / ({self.den})"


@dataclass
class RightFraction:
    """``numerator * embed(denominator)^-1`` with the inverse rightmost."""

    numerator: object  # DerivMatrix or NCPoly
    denominator: CommPoly

    def __post_init__(self):
        if self.denominator.is_zero():
            raise ZeroDivisionError("zero denominator")

    def den(self, alpha: AlphaVector) -> NCPoly:
        return embed_comm(self.denominator, alpha)


def fractions_equal(p, d: NCPoly, q, f: NCPoly):
    """Residual of ``p * d^-1 = q * f^-1`` for ``d, f`` commuting: ``p f - q d``."""
    return p * f - q * d


# ---------------------------------------------------------------------------
# D(b) and its inverse
# ---------------------------------------------------------------------------

def n_matrix(alpha: AlphaVector) -> DerivMatrix:
    a1, a2, a3 = alpha.spatial
    return DerivMatrix.constant([[a3, a1 + I * a2], [a1 - I * a2, -a3]])


def _b_shift(alpha: AlphaVector) -> NCPoly:
    return alpha.b() + ALG.hbar(1).scale(I * alpha.a0)


def dmat_b(alpha: AlphaVector) -> DerivMatrix:
    """(b + i hb a0) I - hb N."""
    return DerivMatrix.scalar(2, _b_shift(alpha)) - n_matrix(alpha) * ALG.hbar(1)


def invert_dmat_b(alpha: AlphaVector) -> RightFraction:
    alpha.require_nondegenerate()
    num = DerivMatrix.scalar(2, _b_shift(alpha)) + n_matrix(alpha) * ALG.hbar(1)
    shift = B_HAT + HB_HAT * CommPoly.const(I * alpha.a0)
    den = shift * shift - CommPoly.const(alpha.norm2) * HB_HAT ** 2
    return RightFraction(num, den)


def dmat_b_residuals(alpha: AlphaVector) -> Dict[str, object]:
    N = n_matrix(alpha)
    return {
        "D(b) = dmat2(b)": dmat_b(alpha) - dmat2(alpha.b()),
        "N^2 = |a|^2 I": N * N - DerivMatrix.scalar(2, alpha.norm2),
    }


def inverse_b_residuals(alpha: AlphaVector) -> Dict[str, object]:
    inv = invert_dmat_b(alpha)
    d = inv.den(alpha)
    D = dmat_b(alpha)
    cl = inv.numerator.classical_limit()
    dcl = d.classical_limit()
    bcl = alpha.b().classical_limit()
    return {
        "D(b) num = den I": D * inv.numerator - DerivMatrix.scalar(2, d),
        "num D(b) = den I": inv.numerator * D - DerivMatrix.scalar(2, d),
        "hb = 0: D(b)^-1 = b^-1 I": cl * bcl - DerivMatrix.scalar(2, dcl, dcl.algebra),
    }


# ---------------------------------------------------------------------------
# Cayley-Hamilton identities
# ---------------------------------------------------------------------------

def _scalar(c: NCPoly) -> DerivMatrix:
    return DerivMatrix.scalar(2, c)


def _square(m: DerivMatrix) -> DerivMatrix:
    return m * m


def ch_rho_residuals() -> Dict[str, DerivMatrix]:
    R = dmat_rho()
    r = ALG.rho(1)
    h2 = ALG.hbar(2)
    h = ALG.hbar(1)
    rl = _scalar(r)
    Rc = R.classical_limit()
    rc = r.classical_limit()
    return {
        "D(rho) = dmat2(rho)": R - dmat2(r),
        "D(rho)^2 - 2 rho D(rho) + (rho^2 - hb^2) I = 0": R * R - R * r.scale(2) + _scalar(r * r - h2),
        "(D(rho) - (rho + hb) I)(D(rho) - (rho - hb) I) = 0": (R - rl - _scalar(h)) * (R - rl + _scalar(h)),
        "hb = 0: (D(r) - r I)^2 = 0": _square(Rc - DerivMatrix.scalar(2, rc, rc.algebra)),
    }


def ch_check_rho() -> Report:
    rep = Report("CH identity for D(rho)")
    for name, r in ch_rho_residuals().items():
        rep.check(name, lambda r=r: r)
    return rep


def ch_b_residual(alpha: AlphaVector) -> DerivMatrix:
    """(D(b) - b I)^2 - |a|^2 hb^2 I, where for a0 != 0 the shift i hb a0 joins b."""
    M = dmat_b(alpha) - _scalar(_b_shift(alpha))
    return M * M - _scalar(ALG.hbar(2).scale(alpha.norm2))


def ch_check_b(alpha: AlphaVector) -> Report:
    rep = Report("CH identity for D(b)")
    rep.check("(D(b) - b I)^2 = |a|^2 hb^2 I", lambda: ch_b_residual(alpha), alpha=alpha.to_list())
    return rep


def commute_residual(alpha: AlphaVector) -> DerivMatrix:
    R, Bm = dmat_rho(), dmat_b(alpha)
    return R * Bm - Bm * R


def commute_check_rho_b(alpha: AlphaVector) -> Report:
    rep = Report("D(rho) D(b) = D(b) D(rho)")
    rep.check("[D(rho), D(b)] = 0", lambda: commute_residual(alpha), alpha=alpha.to_list())
    return rep


def scalar_commutation_residuals(alpha: AlphaVector) -> Dict[str, DerivMatrix]:
    b, r = alpha.b(), ALG.rho(1)
    Bm, R = dmat_b(alpha), dmat_rho()
    return {
        "b D(b) = D(b) b": b * Bm - Bm * b,
        "rho D(rho) = D(rho) rho": r * R - R * r,
    }


# ---------------------------------------------------------------------------
# the linear system for D(c)^-1
# ---------------------------------------------------------------------------

# basis of the span of {I, D(rho), D(b), D(rho) D(b)}; an element is a 4-vector
# of CommPoly coefficients standing to the right of the basis matrices
BASIS = ("I", "R", "B", "RB")


def _basis_mul(u: str, v: str) -> Dict[str, CommPoly]:
    """Product of two basis elements, reduced by the two CH identities and [R, B] = 0."""
    r, b, h2 = RHO_HAT, B_HAT, HB_HAT ** 2
    # R^2 = 2 rho R - (rho^2 - hb^2) I,  B^2 = 2 b B - (b^2 - hb^2) I
    r_sq = {"R": r * 2, "I": -(r * r - h2)}
    b_sq = {"B": b * 2, "I": -(b * b - h2)}
    count = {"R": u.count("R") + v.count("R"), "B": u.count("B") + v.count("B")}
    out = {"I": CommPoly.const(1)}
    for sym, sq in (("R", r_sq), ("B", b_sq)):
        k = count[sym]
        # sym^k as alpha + beta sym
        lin = {"I": CommPoly.const(1)} if k == 0 else {sym: CommPoly.const(1)}
        for _ in range(k - 1):
            nxt: Dict[str, CommPoly] = {}
            for key, c in lin.items():
                if key == "I":
                    nxt[sym] = nxt.get(sym, CommPoly()) + c
                else:
                    for k2, c2 in sq.items():
                        nxt[k2] = nxt.get(k2, CommPoly()) + c * c2
            lin = nxt
        new: Dict[str, CommPoly] = {}
        for key, c in out.items():
            for k2, c2 in lin.items():
                name = "".join(s for s in "RB" if s in key + k2.replace("I", "")) or "I"
                new[name] = new.get(name, CommPoly()) + c * c2
        out = new
    return out


def _elem_mul(p: Dict[str, CommPoly], q: Dict[str, CommPoly]) -> Dict[str, CommPoly]:
    out: Dict[str, CommPoly] = {}
    for u, cu in p.items():
        for v, cv in q.items():
            for w, cw in _basis_mul(u, v).items():
                out[w] = out.get(w, CommPoly()) + cu * cv * cw
    return out


def build_linear_system(alpha: Optional[AlphaVector] = None):
    """Rows over the basis (I, R, B, RB) and unknowns a0..a3.

    Left-multiplies the ansatz by D(c) = R - B and collects coefficients.
    Returns ``(matrix, rhs)`` with CommPoly entries.
    """
    if alpha is not None:
        alpha.require_unit()
    dc = {"R": CommPoly.const(1), "B": CommPoly.const(-1)}
    cols = []
    for unknown in BASIS:
        col = _elem_mul(dc, {unknown: CommPoly.const(1)})
        cols.append([col.get(row, CommPoly()) for row in BASIS])
    matrix = [[cols[j][i] for j in range(4)] for i in range(4)]
    rhs = [CommPoly.const(1), CommPoly(), CommPoly(), CommPoly()]
    return matrix, rhs


def displayed_system():
    r, b, h2 = RHO_HAT, B_HAT, HB_HAT ** 2
    one, zero = CommPoly.const(1), CommPoly()
    matrix = [
        [zero, -(r * r - h2), b * b - h2, zero],
        [one, r * 2, zero, b * b - h2],
        [one, zero, b * 2, r * r - h2],
        [zero, one, -one, -(r - b) * 2],
    ]
    return matrix, [one, zero, zero, zero]


def system_comparison(displayed=None) -> Dict[str, object]:
    """Rows of the derived system against the displayed one, each allowed an overall sign."""
    (dm, dr), (pm, pr) = build_linear_system(), displayed or displayed_system()
    out = {}
    for i in range(4):
        same = all(a == c for a, c in zip(dm[i] + [dr[i]], pm[i] + [pr[i]]))
        flipped = all(a == -c for a, c in zip(dm[i] + [dr[i]], pm[i] + [pr[i]]))
        out[f"row {i + 1}"] = same or flipped
    return out


def _det(m: Sequence[Sequence[CommPoly]]) -> CommPoly:
    n = len(m)
    out = CommPoly()
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = CommPoly.const(sign)
        for i, j in enumerate(perm):
            if m[i][j].is_zero():
                break
            term = term * m[i][j]
        else:
            out = out + term
    return out


def cramer_solve(system) -> List[CommFraction]:
    matrix, rhs = system
    d = _det(matrix)
    if d.is_zero():
        raise SingularSystemError("the coefficient determinant vanishes")
    sols = []
    for k in range(len(matrix)):
        mk = [row[:k] + [rhs[i]] + row[k + 1:] for i, row in enumerate(matrix)]
        sols.append(CommFraction(_det(mk), d))
    return sols


def d_prime() -> CommPoly:
    c = RHO_HAT - B_HAT
    return c * (c * c - HB_HAT ** 2 * 4)


def displayed_numerators() -> List[CommPoly]:
    r, b, h2 = RHO_HAT, B_HAT, HB_HAT ** 2
    return [
        (r * r + b * b - b * r * 3 - h2) * 2,
        b * 3 - r,
        r * 3 - b,
        CommPoly.const(-2),
    ]


def cramer_residuals(numerators: Optional[Sequence[CommPoly]] = None, den: Optional[CommPoly] = None) -> Dict[str, object]:
    system = build_linear_system()
    sols = cramer_solve(system)
    dp = den if den is not None else d_prime()
    numerators = list(numerators) if numerators is not None else displayed_numerators()
    out: Dict[str, object] = {}
    for k, (s, n) in enumerate(zip(sols, numerators)):
        out[f"a{k}"] = s.num * dp - n * s.den
    matrix, rhs = system
    for i, row in enumerate(matrix):
        acc = CommPoly()
        for c, s in zip(row, sols):
            acc = acc + c * s.num
        out[f"equation {i + 1} satisfied"] = acc - rhs[i] * sols[0].den
    # at hb = 0 the second equation reads a0 + 2 rho a1 + b^2 a3 = 0
    nums = [n.at_hbar_zero() for n in numerators]
    out["hb = 0: a0 + 2 rho a1 + b^2 a3 = 0"] = nums[0] + RHO_HAT * 2 * nums[1] + B_HAT * B_HAT * nums[3]
    return out


def _residual_value(r):
    if isinstance(r, CommPoly):
        return r.is_zero()
    return r


def fraction_criterion_sanity() -> Dict[str, bool]:
    """Cross-multiplication equality is reflexive, symmetric and transitive on sample fractions."""
    r, b, h = RHO_HAT, B_HAT, HB_HAT
    c = r - b
    base = [
        CommFraction(CommPoly.const(1), c),
        CommFraction(c * c - h * h * 4, d_prime()),
        CommFraction((c * c - h * h * 4) * (r + h), d_prime() * (r + h)),
        CommFraction(r * 3 - b, d_prime()),
        CommFraction((r * 3 - b) * b * b, d_prime() * b * b),
    ]
    ok_sym = all((p == q) == (q == p) for p in base for q in base)
    ok_refl = all(p == p for p in base)
    ok_trans = all(not (p == q and q == s) or p == s for p in base for q in base for s in base)
    expect = base[0] == base[1] and base[1] == base[2] and base[3] == base[4] and not base[0] == base[3]
    return {"reflexive": ok_refl, "symmetric": ok_sym, "transitive": ok_trans, "expected classes": expect}


# ---------------------------------------------------------------------------
# D(c)^-1 and the verified derivatives of 1/(rho - b)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _c_inverse_cached(alpha: AlphaVector, corrupt: int, nums: Tuple[CommPoly, ...], den: CommPoly):
    alpha.require_unit()
    R, Bm = dmat_rho(), dmat_b(alpha)
    basis = (DerivMatrix.identity(2), R, Bm, R * Bm)
    nums = list(nums)
    if corrupt:
        nums[1] = nums[1] + corrupt
    num = None
    for m, a in zip(basis, nums):
        term = m * embed_comm(a, alpha)
        num = term if num is None else num + term
    return RightFraction(num, den)


def c_inverse(alpha: AlphaVector, corrupt: int = 0, numerators=None, den=None) -> RightFraction:
    """Candidate for D(c)^-1 as ``Num * d'^-1``; ``corrupt`` shifts the a1 numerator."""
    nums = tuple(numerators) if numerators is not None else tuple(displayed_numerators())
    return _c_inverse_cached(alpha, corrupt, nums, den if den is not None else d_prime())


def dmat_c(alpha: AlphaVector) -> DerivMatrix:
    return dmat_rho() - dmat_b(alpha)


def verify_right_inverse(M: DerivMatrix, cand: RightFraction, alpha: AlphaVector) -> Report:
    rep = Report("right inverse")
    d = cand.den(alpha)
    rep.check("M num = den I", lambda: M * cand.numerator - DerivMatrix.scalar(2, d), alpha=alpha.to_list())
    return rep


def c_inverse_left(alpha: AlphaVector, numerators=None) -> DerivMatrix:
    """``Num_L`` with the coefficients on the left, so ``d'^-1 Num_L`` is the left candidate."""
    R, Bm = dmat_rho(), dmat_b(alpha)
    basis = (DerivMatrix.identity(2), R, Bm, R * Bm)
    out = None
    for m, a in zip(basis, numerators if numerators is not None else displayed_numerators()):
        term = embed_comm(a, alpha) * m
        out = term if out is None else out + term
    return out


def inverse_c_residuals(alpha: AlphaVector, corrupt: int = 0, numerators=None, den=None) -> Dict[str, DerivMatrix]:
    """Cleared identities for ``X = Num d'^-1``.

    ``d'`` does not commute with the entries of ``Num``, so ``Num D(c) = d' I``
    is not the left-inverse condition.  Instead ``L = d'^-1 Num_L`` is shown to
    be a left inverse and equal to ``X``; then ``X D(c) = L D(c) = I``.
    """
    cand = c_inverse(alpha, corrupt, numerators, den)
    M = dmat_c(alpha)
    d = cand.den(alpha)
    NL = c_inverse_left(alpha, numerators)
    return {
        "D(c) num = d' I": M * cand.numerator - DerivMatrix.scalar(2, d),
        "num_L D(c) = d' I": NL * M - DerivMatrix.scalar(2, d),
        "d' num = num_L d'": d * cand.numerator - NL * d,
        "D(c) = dmat2(rho - b)": M - dmat2(ALG.rho(1) - alpha.b()),
    }


@dataclass
class AlgebraVector3:
    comps: Tuple[NCPoly, NCPoly, NCPoly]

    @classmethod
    def of(cls, a, b, c) -> "AlgebraVector3":
        lift = lambda v: v if isinstance(v, NCPoly) else ALG.const(v)
        return cls((lift(a), lift(b), lift(c)))

    def __getitem__(self, i):
        return self.comps[i]

    def __add__(self, other):
        return AlgebraVector3(tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __sub__(self, other):
        return AlgebraVector3(tuple(a - b for a, b in zip(self.comps, other.comps)))

    def __mul__(self, c):
        return AlgebraVector3(tuple(a * c for a in self.comps))

    def __rmul__(self, c):
        return AlgebraVector3(tuple(c * a for a in self.comps))

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.comps)

    def classical_limit(self) -> "AlgebraVector3":
        return AlgebraVector3(tuple(a.classical_limit() for a in self.comps))

    def __str__(self):
        return "(" + ", ".join(str(a.canonical()) for a in self.comps) + ")"


def cross_product(u: AlgebraVector3, v: AlgebraVector3) -> AlgebraVector3:
    return AlgebraVector3((
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ))


def rho_vec() -> AlgebraVector3:
    t, x, y, z = ALG.gens()
    return AlgebraVector3((x, y, z))


def alpha_vec(alpha: AlphaVector) -> AlgebraVector3:
    return AlgebraVector3.of(*alpha.spatial)


@dataclass
class CInverseDerivatives:
    """Derivatives of 1/(rho - b) as numerators over the common denominator ``d'``."""

    alpha: AlphaVector
    dt_hat: NCPoly
    dt: NCPoly
    grad: AlgebraVector3
    den: NCPoly


def qpd_of_c_inverse(alpha: AlphaVector, corrupt: int = 0) -> CInverseDerivatives:
    """Read the derivatives off ``D(c^-1) = D(c)^-1 = Num d'^-1`` entry-wise."""
    cand = c_inverse(alpha, corrupt)
    v = from_dmat2(cand.numerator)
    d = cand.den(alpha)
    c = ALG.rho(1) - alpha.b()
    # c^-1 = (c^2 - 4 hb^2) d'^-1
    c_inv_num = c * c - ALG.hbar(2).scale(4)
    dt = unshift_t(v["dt"], c_inv_num)
    return CInverseDerivatives(alpha, v["dt"], dt, AlgebraVector3((v["dx"], v["dy"], v["dz"])), d)


def displayed_dt(alpha: AlphaVector) -> Tuple[NCPoly, NCPoly]:
    """-i hb / (rho ((rho - b)^2 - 4 hb^2)) as (numerator, denominator)."""
    c = ALG.rho(1) - alpha.b()
    return ALG.hbar(1).scale(-I), ALG.rho(1) * (c * c - ALG.hbar(2).scale(4))


def displayed_grad(alpha: AlphaVector) -> Tuple[AlgebraVector3, NCPoly]:
    """Both displayed terms over ``rho d'``, factors kept in the displayed order."""
    r = ALG.rho(1)
    c = r - alpha.b()
    h = ALG.hbar(1)
    av, rv = alpha_vec(alpha), rho_vec()
    q = c * c - ALG.hbar(2).scale(4)
    first = (av * r - rv) * c
    second = (av * h + cross_product(rv, av) * ALG.const(I)) * h.scale(2)
    return first - second, r * c * q


def gradient_residuals(alpha: AlphaVector, corrupt: int = 0, displayed=None) -> Dict[str, object]:
    """``displayed`` overrides ``(dt_num, dt_den, grad_num, grad_den)``."""
    got = qpd_of_c_inverse(alpha, corrupt)
    if displayed is None:
        n_dt, f_dt = displayed_dt(alpha)
        n_g, f_g = displayed_grad(alpha)
    else:
        n_dt, f_dt, n_g, f_g = displayed
    out: Dict[str, object] = {
        "dt(1/(rho - b))": fractions_equal(got.dt, got.den, n_dt, f_dt),
    }
    for i, name in enumerate("xyz"):
        out[f"d{name}(1/(rho - b))"] = fractions_equal(got.grad[i], got.den, n_g[i], f_g)
    return out


def classical_gradient(alpha: AlphaVector) -> Tuple[AlgebraVector3, NCPoly]:
    r = ALG.rho(1)
    c = r - alpha.b()
    return alpha_vec(alpha) * r - rho_vec(), r * c * c


def classical_gradient_residuals(alpha: AlphaVector, target=None) -> Dict[str, object]:
    """hb = 0: grad 1/(r - b) = (r a - r_vec)/(r (r - b)^2) and dt 1/(r - b) = 0."""
    got = qpd_of_c_inverse(alpha)
    num, den = target if target is not None else classical_gradient(alpha)
    target = num.classical_limit()
    f = den.classical_limit()
    den = got.den.classical_limit()
    out: Dict[str, object] = {"hb = 0: dt(1/(r - b)) = 0": got.dt.classical_limit()}
    g = got.grad.classical_limit()
    for i, name in enumerate("xyz"):
        out[f"hb = 0: d{name}(1/(r - b))"] = fractions_equal(g[i], den, target[i], f)
    n_g, f_g = displayed_grad(alpha)
    ng = n_g.classical_limit()
    fg = f_g.classical_limit()
    for i, name in enumerate("xyz"):
        out[f"hb = 0: displayed d{name} reduces"] = fractions_equal(ng[i], fg, target[i], f)
    return out


def cross_product_residuals() -> Dict[str, object]:
    rv = rho_vec()
    e = lambda *v: AlgebraVector3.of(*v)
    ez = AlphaVector.of(0, 0, 0, 1)
    t, x, y, z = ALG.gens()
    return {
        "rho x rho = 2 i hb rho": cross_product(rv, rv) - rv * ALG.hbar(1).scale(2 * I),
        "e1 x e2 = e3": cross_product(e(1, 0, 0), e(0, 1, 0)) - e(0, 0, 1),
        "rho x e3 = (y, -x, 0)": cross_product(rv, alpha_vec(ez)) - AlgebraVector3((y, -x, ALG.zero())),
    }


def embed_residuals(alpha: AlphaVector, samples: Iterable[Tuple[CommPoly, CommPoly]] = ()) -> Dict[str, object]:
    out: Dict[str, object] = {
        "rho b = b rho": embed_comm(RHO_HAT * B_HAT, alpha) - embed_comm(B_HAT * RHO_HAT, alpha),
        "b^2 = b b": embed_comm(B_HAT ** 2, alpha) - alpha.b() * alpha.b(),
    }
    for k, (p, q) in enumerate(samples):
        out[f"embed(pq) = embed(p) embed(q) #{k}"] = embed_comm(p * q, alpha) - embed_comm(p, alpha) * embed_comm(q, alpha)
    return out


DEFAULT_ALPHAS = (
    AlphaVector.of(0, 0, 0, 1),
    AlphaVector.of(0, 1, 0, 0),
    AlphaVector.of(0, Fraction(3, 5), Fraction(4, 5), 0),
)


def _check_dict(rep: Report, prefix: str, residuals: Dict[str, object], alpha=None):
    for name, r in residuals.items():
        rep.check(f"{prefix}{name}", lambda r=r: _residual_value(r), alpha=alpha)


def inverse_b_report(alphas: Sequence[AlphaVector]) -> Report:
    rep = Report("inverse of D(b)")
    for a in alphas:
        al = a.to_list()
        _check_dict(rep, "", dmat_b_residuals(a), al)
        _check_dict(rep, "", inverse_b_residuals(a), al)
        rep.extend(ch_check_b(a))
    return rep


def inverse_c_report(alphas: Sequence[AlphaVector] = DEFAULT_ALPHAS, corrupt: int = 0) -> Report:
    rep = Report("inverse of D(rho - b)")
    rep.extend(ch_check_rho())
    _check_dict(rep, "derived system ", system_comparison())
    _check_dict(rep, "Cramer ", cramer_residuals())
    _check_dict(rep, "fraction equality ", fraction_criterion_sanity())
    for a in alphas:
        al = a.to_list()
        rep.extend(commute_check_rho_b(a))
        rep.extend(ch_check_b(a))
        _check_dict(rep, "", scalar_commutation_residuals(a), al)
        _check_dict(rep, "", inverse_c_residuals(a, corrupt), al)
    return rep


def gradients_report(alphas: Sequence[AlphaVector] = DEFAULT_ALPHAS, corrupt: int = 0) -> Report:
    rep = Report("derivatives of 1/(rho - b)")
    _check_dict(rep, "", cross_product_residuals())
    for a in alphas:
        _check_dict(rep, "", gradient_residuals(a, corrupt), a.to_list())
    return rep


def classical_report(alphas: Sequence[AlphaVector] = DEFAULT_ALPHAS) -> Report:
    rep = Report("classical limits of the inverse formulas")
    for a in alphas:
        _check_dict(rep, "", classical_gradient_residuals(a), a.to_list())
    _check_dict(rep, "", {k: v for k, v in ch_rho_residuals().items() if k.startswith("hb = 0")})
    return rep


def inversion_report(alphas: Sequence[AlphaVector] = DEFAULT_ALPHAS) -> Report:
    rep = Report("inversion")
    b_alphas = list(alphas) + [AlphaVector.of(1, 0, 0, 1), AlphaVector.of(0, 1, 1, 0), AlphaVector.of(Fraction(2, 3), -1, Fraction(1, 2), 2)]
    rep.extend(inverse_b_report(b_alphas))
    rep.extend(inverse_c_report(alphas))
    rep.extend(gradients_report(alphas))
    rep.extend(classical_report(alphas))
    return rep

"""The quantum double of U(gl(N)_h) with its algebra of derivatives.

A is the commutative algebra generated by ``d[i,j]`` (the partial derivatives
``∂_i^j``), B is U(gl(N)_h).  The permutation map sigma moves A-letters to the
right of B-letters one at a time using, with ``h = 2*i*hb``::

    ∂_i^j l_k^s = l_k^s ∂_i^j + δ_i^s δ_k^j + h δ_k^j ∂_i^s          (standard)
    ∂_i^j l_k^s = l_k^s ∂_i^j + δ_i^s δ_k^j - h δ_i^s ∂_k^j          (variant)
    ∂̂_i^j l_k^s = l_k^s ∂̂_i^j + h δ_k^j ∂̂_i^s                      (shifted)

where ``∂̂_i^j = ∂_i^j + δ_i^j/h``.  sigma works on free B-words, so it can be
fed unreduced relations; B-parts are normal-ordered only at the end.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Dict, NamedTuple, Sequence, Tuple

from qpd.ncalgebra import NCPoly, gl
from qpd.report import Report
from qpd.scalars import ONE, ZERO, HbarScalar, t_add, t_mul, t_neg

H_T = (0, 2, 1)       # h = 2i hb: coefficient, hb shift 1
MINUS_H_T = (0, -2, 1)
INV_H_T = (0, -1, 2)  # 1/h = -i/2 hb^-1

STANDARD, VARIANT, SHIFTED = "standard", "variant", "shifted"


class DGenerator(NamedTuple):
    i: int
    j: int
    shifted: bool = False

    def index(self, N: int) -> int:
        return (self.i - 1) * N + (self.j - 1)


def _ij(N: int, d: int) -> Tuple[int, int]:
    return d // N + 1, d % N + 1


def _idx(N: int, i: int, j: int) -> int:
    return (i - 1) * N + (j - 1)


def _add(out: dict, key, c) -> None:
    s = t_add(out.get(key, ZERO), c)
    if s == ZERO:
        out.pop(key, None)
    else:
        out[key] = s


class _Sigma:
    """Memoized passage of one A-letter through a free B-word."""

    def __init__(self, N: int, rule: str):
        self.N = N
        self.rule = rule
        self.memo: Dict[tuple, dict] = {}

    def swap(self, d: int, g: int):
        """``(constant, [(a, coeff, hb_shift)])`` for the rule applied to d, g."""
        N = self.N
        i, j = _ij(N, d)
        k, s = _ij(N, g)
        const = i == s and k == j and self.rule != SHIFTED
        extra = []
        if self.rule == STANDARD:
            if k == j:
                extra.append((_idx(N, i, s), H_T, 1))
        elif self.rule == VARIANT:
            if i == s:
                extra.append((_idx(N, k, j), MINUS_H_T, 1))
        else:
            if k == j:
                extra.append((_idx(N, i, s), H_T, 1))
        return const, extra

    def pass_word(self, d: int, word: tuple) -> dict:
        """``∂_d * word`` as ``{a: {(word', hb): coeff}}``; a = -1 means no A-letter."""
        key = (d, word)
        res = self.memo.get(key)
        if res is not None:
            return res
        res = {}
        if not word:
            res[d] = {((), 0): ONE}
        else:
            g, rest = word[0], word[1:]
            for a, terms in self.pass_word(d, rest).items():
                bucket = res.setdefault(a, {})
                for (w, s), c in terms.items():
                    _add(bucket, ((g,) + w, s), c)
            const, extra = self.swap(d, g)
            if const:
                _add(res.setdefault(-1, {}), (rest, 0), ONE)
            for a2, c2, s2 in extra:
                for a, terms in self.pass_word(a2, rest).items():
                    bucket = res.setdefault(a, {})
                    for (w, s), c in terms.items():
                        _add(bucket, (w, s + s2), t_mul(c, c2))
            res = {a: b for a, b in res.items() if b}
        self.memo[key] = res
        return res

    def run(self, aword: Sequence[int], bterms: dict) -> dict:
        """Apply sigma to ``aword ⊗ b``; returns ``{(aexps, word, hb): coeff}``."""
        n2 = self.N * self.N
        state = {}
        zero = (0,) * n2
        for (w, h), c in bterms.items():
            _add(state, (zero, w, h), c)
        for d in reversed(aword):
            new = {}
            for (ae, w, h), c in state.items():
                for a, terms in self.pass_word(d, w).items():
                    if a >= 0:
                        lst = list(ae)
                        lst[a] += 1
                        ae2 = tuple(lst)
                    else:
                        ae2 = ae
                    for (w2, s2), c2 in terms.items():
                        _add(new, (ae2, w2, h + s2), t_mul(c, c2))
            state = new
        return state


@lru_cache(maxsize=None)
def _sigma(N: int, rule: str) -> _Sigma:
    return _Sigma(N, rule)


@lru_cache(maxsize=100000)
def _word_poly(N: int, word: tuple) -> NCPoly:
    alg = gl(N)
    out = alg.one()
    for g in word:
        out = out * alg.gen(g)
    return out


def _as_words(N: int, b) -> dict:
    """B-input as ``{(word, hb): coeff}``: an NCPoly or a list of ``(coeff, word)``."""
    out = {}
    if isinstance(b, NCPoly):
        n = b.algebra.n
        for key, c in b.terms.items():
            word = tuple(g for g in range(n) for _ in range(key[g]))
            _add(out, (word, key[n + 1]), c)
        return out
    alg = gl(N)
    for coeff, word in b:
        w = tuple(_idx(N, *g) if isinstance(g, tuple) else alg.index(g) for g in word)
        for h, c in NCPoly.scalar(alg, coeff).terms.items():
            _add(out, (w, h[-1]), c)
    return out


def _aword(N: int, aword) -> tuple:
    out = []
    for d in aword:
        if isinstance(d, DGenerator):
            out.append(d.index(N))
        elif isinstance(d, tuple):
            out.append(_idx(N, *d))
        else:
            out.append(d)
    return tuple(out)


class DoubleElement:
    """``sum b_part * a_part`` in B⊗A; ``terms`` maps A-exponent vectors to B-parts."""

    __slots__ = ("N", "shifted", "terms")

    def __init__(self, N: int, terms: dict, shifted: bool = False):
        self.N = N
        self.shifted = shifted
        self.terms = {k: v for k, v in terms.items() if not v.is_zero()}

    @classmethod
    def from_raw(cls, N: int, raw: dict, shifted: bool = False) -> "DoubleElement":
        grouped: Dict[tuple, NCPoly] = {}
        alg = gl(N)
        for (ae, w, h), c in raw.items():
            p = _word_poly(N, w)
            term = NCPoly(alg, {k[:-1] + (k[-1] + h,): t_mul(v, c) for k, v in p.terms.items()})
            grouped[ae] = grouped[ae] + term if ae in grouped else term
        return cls(N, grouped, shifted)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "DoubleElement") -> "DoubleElement":
        self._compatible(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return DoubleElement(self.N, out, self.shifted)

    def __neg__(self):
        return DoubleElement(self.N, {k: -v for k, v in self.terms.items()}, self.shifted)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "DoubleElement":
        return DoubleElement(self.N, {k: v.scale(c) for k, v in self.terms.items()}, self.shifted)

    def __eq__(self, other):
        if not isinstance(other, DoubleElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def _compatible(self, other):
        if self.N != other.N or self.shifted != other.shifted:
            raise ValueError("double elements over different generator sets")

    def counit(self) -> NCPoly:
        """Apply the counit to the A-part: ε(∂) = 0, and ε(∂̂_i^j) = δ_i^j/h when shifted."""
        alg = gl(self.N)
        out = alg.zero()
        N = self.N
        for ae, b in self.terms.items():
            if not self.shifted:
                if not any(ae):
                    out = out + b
                continue
            k = 0
            ok = True
            for d, e in enumerate(ae):
                if e:
                    i, j = _ij(N, d)
                    if i != j:
                        ok = False
                        break
                    k += e
            if ok:
                out = out + b * _inv_h_power(alg, k)
        return out

    def unshift(self) -> "DoubleElement":
        """Rewrite shifted A-monomials through ∂̂_i^i = ∂_i^i + 1/h."""
        if not self.shifted:
            return self
        N = self.N
        out: Dict[tuple, NCPoly] = {}
        for ae, b in self.terms.items():
            for ae2, c in _expand_shift(N, ae).items():
                term = b * c
                out[ae2] = out[ae2] + term if ae2 in out else term
        return DoubleElement(N, out, False)

    def classical_limit(self) -> "DoubleElement":
        return DoubleElement(self.N, {k: v.classical_limit() for k, v in self.terms.items()}, self.shifted)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for ae in sorted(self.terms, reverse=True):
            a = "*".join(
                (f"d[{_ij(self.N, d)[0]},{_ij(self.N, d)[1]}]" if e == 1 else
                 f"d[{_ij(self.N, d)[0]},{_ij(self.N, d)[1]}]^{e}")
                for d, e in enumerate(ae) if e)
            if self.shifted:
                a = a.replace("d[", "dh[")
            parts.append(f"({self.terms[ae]})" + (f"*{a}" if a else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"DoubleElement({self})"


def _inv_h_power(alg, k: int) -> NCPoly:
    c = ONE
    for _ in range(k):
        c = t_mul(c, INV_H_T)
    return NCPoly(alg, {alg.key(hb=-k): c}) if c != ZERO else alg.zero()


def _expand_shift(N: int, ae: tuple) -> Dict[tuple, NCPoly]:
    """Binomial expansion of a shifted A-monomial; values are scalar NCPolys."""
    alg = gl(N)
    out = {ae: alg.one()}
    for d, e in enumerate(ae):
        i, j = _ij(N, d)
        if i != j or not e:
            continue
        new = {}
        for cur, c in out.items():
            for m in range(e + 1):
                lst = list(cur)
                lst[d] = e - m
                coef = c * _inv_h_power(alg, m).scale(_binom(e, m))
                key = tuple(lst)
                new[key] = new[key] + coef if key in new else coef
        out = new
    return out


def _binom(n: int, k: int) -> int:
    from math import comb
    return comb(n, k)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def sigma_permute(aword, b, N: int = 2, rule: str = STANDARD) -> DoubleElement:
    """sigma(aword ⊗ b): aword lists derivative indices (or (i, j) pairs)."""
    if isinstance(b, NCPoly):
        N = b.algebra.N
    raw = _sigma(N, rule).run(_aword(N, aword), _as_words(N, b))
    return DoubleElement.from_raw(N, raw, rule == SHIFTED)


def shifted_permute(aword, b, N: int = 2) -> DoubleElement:
    return sigma_permute(aword, b, N, SHIFTED)


def act(aword, b, N: int = 2, rule: str = STANDARD) -> NCPoly:
    """``aword ▷ b``: sigma followed by the counit on the A-part."""
    return sigma_permute(aword, b, N, rule).counit()


def shift_expand_word(N: int, aword) -> Dict[tuple, HbarScalar]:
    """Expand a word in ∂̂ into ``{∂-word: coefficient}``."""
    terms = {((), 0): ONE}
    for d in _aword(N, aword):
        i, j = _ij(N, d)
        new = {}
        for (w, h), c in terms.items():
            _add(new, (w + (d,), h), c)
            if i == j:
                _add(new, (w, h - 1), t_mul(c, INV_H_T))
        terms = new
    return terms


def shifted_act_via_unshifted(aword, b, N: int = 2) -> NCPoly:
    """``∂̂-word ▷ b`` computed through the unshifted action."""
    if isinstance(b, NCPoly):
        N = b.algebra.N
    alg = gl(N)
    out = alg.zero()
    for (w, h), c in shift_expand_word(N, aword).items():
        out = out + act(w, b, N) * NCPoly(alg, {alg.key(hb=h): c})
    return out


# -- the coproduct on A ------------------------------------------------------

class ATensor:
    """Element of A^{⊗k}: ``{(e_1, ..., e_k, hb): coeff}`` with exponent tuples e_m."""

    __slots__ = ("N", "k", "terms")

    def __init__(self, N: int, k: int, terms: dict):
        self.N = N
        self.k = k
        self.terms = terms

    @classmethod
    def unit(cls, N: int, k: int) -> "ATensor":
        z = (0,) * (N * N)
        return cls(N, k, {(z,) * k + (0,): ONE})

    @classmethod
    def gen(cls, N: int, d: int, leg: int = 0, k: int = 1, coeff=ONE, hb: int = 0) -> "ATensor":
        z = [(0,) * (N * N)] * k
        e = [0] * (N * N)
        e[d] = 1
        z[leg] = tuple(e)
        return cls(N, k, {tuple(z) + (hb,): coeff})

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            _add(out, key, c)
        return ATensor(self.N, self.k, out)

    def __neg__(self):
        return ATensor(self.N, self.k, {key: t_neg(c) for key, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                legs = tuple(tuple(a + b for a, b in zip(x, y)) for x, y in zip(k1[:-1], k2[:-1]))
                _add(out, legs + (k1[-1] + k2[-1],), t_mul(c1, c2))
        return ATensor(self.N, self.k, out)

    def tensor(self, other) -> "ATensor":
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                _add(out, k1[:-1] + k2[:-1] + (k1[-1] + k2[-1],), t_mul(c1, c2))
        return ATensor(self.N, self.k + other.k, out)

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        return str(self.terms) if self.terms else "0"


def delta_gen(N: int, d: int) -> ATensor:
    """Δ(∂_i^j) = ∂_i^j⊗1 + 1⊗∂_i^j + h Σ_k ∂_k^j⊗∂_i^k."""
    i, j = _ij(N, d)
    out = ATensor.gen(N, d, 0, 2) + ATensor.gen(N, d, 1, 2)
    for k in range(1, N + 1):
        left = ATensor.gen(N, _idx(N, k, j), 0, 1, H_T, 1)
        right = ATensor.gen(N, _idx(N, i, k), 0, 1)
        out = out + left.tensor(right)
    return out


@lru_cache(maxsize=None)
def _delta_mono_cached(N: int, ae: tuple) -> ATensor:
    out = ATensor.unit(N, 2)
    for d, e in enumerate(ae):
        for _ in range(e):
            out = out * delta_gen(N, d)
    return out


def delta_on_leg(T: ATensor, leg: int) -> ATensor:
    """Apply Δ to one tensor leg of T (algebra map, so monomial-wise)."""
    N = T.N
    out = {}
    for key, c in T.terms.items():
        D = _delta_mono_cached(N, key[leg])
        for dk, dc in D.terms.items():
            nk = key[:leg] + dk[:2] + key[leg + 1:-1] + (key[-1] + dk[-1],)
            _add(out, nk, t_mul(c, dc))
    return ATensor(N, T.k + 1, out)


def coproduct_act(aword, b1, b2, N: int = 2) -> NCPoly:
    """Leibniz-rule action Σ (a_(1) ▷ b1)(a_(2) ▷ b2) with Δ(aword)."""
    if isinstance(b1, NCPoly):
        N = b1.algebra.N
    ae = [0] * (N * N)
    for d in _aword(N, aword):
        ae[d] += 1
    D = _delta_mono_cached(N, tuple(ae))
    alg = gl(N)
    out = alg.zero()
    for (e1, e2, h), c in D.terms.items():
        w1 = tuple(d for d in range(N * N) for _ in range(e1[d]))
        w2 = tuple(d for d in range(N * N) for _ in range(e2[d]))
        left = act(w1, b1, N)
        if left.is_zero():
            continue
        out = out + (left * act(w2, b2, N)) * NCPoly(alg, {alg.key(hb=h): c})
    return out


# ---------------------------------------------------------------------------
# consistency checks
# ---------------------------------------------------------------------------

def relation_words(N: int, k: int, s: int, p: int, q: int):
    """The defining relation l_k^s l_p^q - l_p^q l_k^s - h(δ_p^s l_k^q - δ_k^q l_p^s) as free words."""
    out = [(1, (_idx(N, k, s), _idx(N, p, q))), (-1, (_idx(N, p, q), _idx(N, k, s)))]
    mh = HbarScalar.from_laurent({1: (0, -2, 1)})
    if p == s:
        out.append((mh, (_idx(N, k, q),)))
    if k == q:
        out.append((-mh, (_idx(N, p, s),)))
    return out


def _quads(N: int):
    return itertools.product(range(1, N + 1), repeat=4)


def check_compatibility(N: int, rule: str = STANDARD) -> Report:
    rep = Report(f"compatibility N={N}" + ("" if rule == STANDARD else f" ({rule})"))
    n2 = N * N

    def b_ideal():
        bad = {}
        for d in range(n2):
            for k, s, p, q in _quads(N):
                r = sigma_permute([d], relation_words(N, k, s, p, q), N, rule)
                if not r.is_zero():
                    bad[(_ij(N, d), (k, s, p, q))] = r
        return bad

    def a_ideal():
        bad = {}
        for d1, d2 in itertools.combinations(range(n2), 2):
            for g in range(n2):
                r = sigma_permute([d1, d2], [(1, (g,))], N, rule) - sigma_permute([d2, d1], [(1, (g,))], N, rule)
                if not r.is_zero():
                    bad[(_ij(N, d1), _ij(N, d2), _ij(N, g))] = r
        return bad

    def classical():
        bad = {}
        alg = gl(N)
        for d in range(n2):
            for g in range(n2):
                lhs = sigma_permute([d], [(1, (g,))], N, rule).classical_limit()
                i, j = _ij(N, d)
                k, s = _ij(N, g)
                ae = [0] * n2
                ae[d] = 1
                exp = {tuple(ae): alg.gen(g)}
                if i == s and k == j:
                    exp[(0,) * n2] = alg.one()
                r = lhs - DoubleElement(N, exp).classical_limit()
                if not r.is_zero():
                    bad[(_ij(N, d), _ij(N, g))] = r
        return bad

    rep.check("sigma maps (B-relations) ⊗ A-generator into the ideal", b_ideal)
    rep.check("sigma respects commutativity of A", a_ideal)
    rep.check("hb = 0: classical Weyl commutation", classical)
    return rep


def check_coassociativity(N: int) -> Report:
    rep = Report(f"coassociativity N={N}")

    def run():
        bad = {}
        for d in range(N * N):
            D = delta_gen(N, d)
            r = delta_on_leg(D, 0) - delta_on_leg(D, 1)
            if not r.is_zero():
                bad[_ij(N, d)] = r
        return bad

    def unit():
        U = ATensor.unit(N, 1)
        return delta_on_leg(delta_on_leg(U, 0), 0) - delta_on_leg(delta_on_leg(U, 0), 1)

    rep.check("(Δ⊗id)Δ = (id⊗Δ)Δ on generators", run)
    rep.check("(Δ⊗id)Δ = (id⊗Δ)Δ on 1", unit)
    return rep


def check_relation_annihilation(N: int, max_aword: int = 1) -> Report:
    """Every relation element is killed by every A-word of length <= max_aword."""
    rep = Report(f"relations annihilated N={N}")

    def run():
        bad = {}
        for L in range(1, max_aword + 1):
            for aw in itertools.combinations_with_replacement(range(N * N), L):
                for k, s, p, q in _quads(N):
                    r = act(aw, relation_words(N, k, s, p, q), N)
                    if not r.is_zero():
                        bad[(aw, (k, s, p, q))] = r
        return bad

    rep.check("d ▷ (l l - l l - h(δ l - δ l)) = 0", run)
    return rep


def _nmat(N: int):
    return list(itertools.product(range(1, N + 1), repeat=3))


def _matmul(A: dict, B: dict, zero) -> dict:
    rows = {}
    for (r, c), v in B.items():
        rows.setdefault(r, []).append((c, v))
    out = {}
    for (r, m), v in A.items():
        for c, w in rows.get(m, ()):
            p = v * w
            out[(r, c)] = out[(r, c)] + p if (r, c) in out else p
    return out


def _perm(N: int, l1: int, l2: int, alg) -> dict:
    out = {}
    one = alg.one()
    for a in _nmat(N):
        c = list(a)
        c[l1], c[l2] = a[l2], a[l1]
        out[(a, tuple(c))] = one
    return out


def _leg(N: int, entry, leg: int) -> dict:
    out = {}
    for a in _nmat(N):
        for v in range(1, N + 1):
            c = list(a)
            c[leg] = v
            e = entry(a[leg], v)
            if e is not None:
                out[(a, tuple(c))] = e
    return out


def check_second_order_action(N: int) -> Report:
    """D1 ▷ (L2 L3) = P12 L3 + L2 P13 + h P12 P23 on V^{⊗3}, with P realized as leg swaps."""
    rep = Report(f"second-order action N={N}")
    alg = gl(N)

    def run():
        L = lambda k, s: alg.gen(_idx(N, k, s))
        P12, P13, P23 = _perm(N, 0, 1, alg), _perm(N, 0, 2, alg), _perm(N, 1, 2, alg)
        L2, L3 = _leg(N, L, 1), _leg(N, L, 2)
        h = alg.hbar(1).scale(_H)
        rhs = {}
        for M in (_matmul(P12, L3, None), _matmul(L2, P13, None),
                  {k: v * h for k, v in _matmul(P12, P23, None).items()}):
            for key, v in M.items():
                rhs[key] = rhs[key] + v if key in rhs else v
        bad = {}
        for a in _nmat(N):
            for c in _nmat(N):
                lhs = act([_idx(N, a[0], c[0])], [(1, (_idx(N, a[1], c[1]), _idx(N, a[2], c[2])))], N)
                r = lhs - rhs.get((a, c), alg.zero())
                if not r.is_zero():
                    bad[(a, c)] = r
        return bad

    rep.check("D1 ▷ (L2 L3) = P12 L3 + L2 P13 + h P12 P23", run)
    return rep


_H = HbarScalar.from_laurent({0: (0, 2, 1)})  # the factor 2i; times hb gives h


# -- the transposed system ---------------------------------------------------

def _rule_terms(N: int, rule: str, i: int, j: int, k: int, s: int) -> dict:
    """Right-hand side of the rule for ∂_i^j l_k^s as symbolic terms."""
    h = HbarScalar.from_laurent({1: (0, 2, 1)})
    out = {("LD", k, s, i, j): HbarScalar(1)}
    if i == s and k == j:
        out[("1",)] = HbarScalar(1)
    if rule == STANDARD and k == j:
        out[("D", i, s)] = h
    if rule == VARIANT and i == s:
        out[("D", k, j)] = -h
    return out


def _flip_h(c: HbarScalar) -> HbarScalar:
    return HbarScalar.from_laurent({n: (v if n % 2 == 0 else (-v[0], -v[1], v[2])) for n, v in c.laurent().items()})


def _transpose_terms(terms: dict) -> dict:
    out = {}
    for key, c in terms.items():
        if key[0] == "LD":
            _, k, s, i, j = key
            nk = ("LD", s, k, j, i)
        elif key[0] == "D":
            nk = ("D", key[2], key[1])
        else:
            nk = key
        out[nk] = _flip_h(c)
    return out


def _terms_diff(a: dict, b: dict) -> dict:
    keys = set(a) | set(b)
    out = {}
    for key in keys:
        d = a.get(key, HbarScalar(0)) - b.get(key, HbarScalar(0))
        if not d.is_zero():
            out[key] = d
    return out


def transpose_variant_equivalence(N: int) -> Report:
    rep = Report(f"transposition equivalence N={N}")

    def mapping(src, dst):
        def run():
            bad = {}
            for i, j, k, s in _quads(N):
                # ∂_i^j l_k^s maps to ∂_j^i l_s^k
                r = _terms_diff(_transpose_terms(_rule_terms(N, src, i, j, k, s)), _rule_terms(N, dst, j, i, s, k))
                if r:
                    bad[(i, j, k, s)] = r
            return bad
        return run

    def relation_invariant():
        alg = gl(N)
        bad = {}
        for k, s, p, q in _quads(N):
            words = relation_words(N, k, s, p, q)
            img = alg.zero()
            for coeff, w in words:
                c = _flip_h(HbarScalar(coeff) if not isinstance(coeff, HbarScalar) else coeff)
                mono = alg.one()
                for g in w:
                    a, b = _ij(N, g)
                    mono = mono * alg.gen(_idx(N, b, a))
                img = img + mono.scale(c)
            if not img.is_zero():
                bad[(k, s, p, q)] = img
        return bad

    def classical():
        bad = {}
        for i, j, k, s in _quads(N):
            a = {key: c for key, c in _rule_terms(N, STANDARD, i, j, k, s).items() if substitutes(c)}
            b = {key: c for key, c in _rule_terms(N, VARIANT, i, j, k, s).items() if substitutes(c)}
            r = _terms_diff(a, b)
            if r:
                bad[(i, j, k, s)] = r
        return bad

    rep.check("transpose + (h -> -h) maps the standard system onto the variant", mapping(STANDARD, VARIANT))
    rep.check("transpose + (h -> -h) maps the variant system onto the standard", mapping(VARIANT, STANDARD))
    rep.check("defining relations invariant under transpose + (h -> -h)", relation_invariant)
    rep.check("hb = 0: both systems coincide", classical)
    return rep


def substitutes(c: HbarScalar) -> bool:
    """True when c survives hb = 0."""
    return 0 in c.laurent()


# -- shifted generators and group-likeness ------------------------------------

def check_shifted_agreement(N: int, samples=None) -> Report:
    """Shifted sigma agrees with sigma after ∂̂ = ∂ + δ/h, on pairs (A-word, B-element)."""
    rep = Report(f"shifted permutation N={N}")
    if samples is None:
        samples = [((d,), [(1, (g,))]) for d in range(N * N) for g in range(N * N)]

    def run():
        bad = {}
        for aw, b in samples:
            lhs = shifted_permute(aw, b, N).unshift()
            rhs = DoubleElement(N, {})
            for (w, h), c in shift_expand_word(N, aw).items():
                rhs = rhs + sigma_permute(w, b, N).scale(HbarScalar.from_laurent({h: c}))
            r = lhs - rhs
            if not r.is_zero():
                bad[(aw, str(b))] = r
        return bad

    rep.check("shifted sigma = sigma after the shift", run)
    return rep


def _shifted_leg(N: int, i: int, j: int) -> ATensor:
    t = ATensor.gen(N, _idx(N, i, j))
    if i == j:
        t = t + ATensor(N, 1, {((0,) * (N * N), -1): INV_H_T})
    return t


def grouplike_coproduct(N: int) -> dict:
    """Residuals Δ(𝒟_i^j) - Σ_k 𝒟_i^k ⊗ 𝒟_k^j with 𝒟_i^j = h ∂̂_j^i."""
    bad = {}
    h = ATensor(N, 2, {((0,) * (N * N),) * 2 + (1,): H_T})
    h1 = ATensor(N, 1, {((0,) * (N * N), 1): H_T})
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            d = _idx(N, j, i)
            lhs = delta_gen(N, d)
            if i == j:
                lhs = lhs + ATensor(N, 2, {((0,) * (N * N),) * 2 + (-1,): INV_H_T})
            lhs = h * lhs
            rhs = ATensor(N, 2, {})
            for k in range(1, N + 1):
                left = h1 * _shifted_leg(N, k, i)
                right = h1 * _shifted_leg(N, j, k)
                rhs = rhs + left.tensor(right)
            r = lhs - rhs
            if not r.is_zero():
                bad[(i, j)] = r
    return bad


def dhat_matrix(a: NCPoly):
    """``h D̂(a)^t`` as an N×N list of NCPolys, entry (i, j) = h ∂̂_j^i ▷ a."""
    N = a.algebra.N
    alg = a.algebra
    h = alg.hbar(1).scale(_H)
    out = []
    for i in range(1, N + 1):
        row = []
        for j in range(1, N + 1):
            v = act([_idx(N, j, i)], a, N)
            if i == j:
                v = v + a * alg.hbar(-1).scale(HbarScalar.from_laurent({0: INV_H_T}))
            row.append(h * v)
        out.append(row)
    return out


def _mat_mul(A, B):
    n = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(1, n)), A[i][0] * B[0][j]) for j in range(n)] for i in range(n)]


def leibniz_grouplike_residual(a: NCPoly, b: NCPoly):
    """``𝒟(ab) - 𝒟(a)𝒟(b)`` entry-wise, 𝒟 = h D̂^t."""
    lhs = dhat_matrix(a * b)
    rhs = _mat_mul(dhat_matrix(a), dhat_matrix(b))
    return [[lhs[i][j] - rhs[i][j] for j in range(len(lhs))] for i in range(len(lhs))]


def grouplike_check(N: int, pairs=None) -> Report:
    rep = Report(f"group-like N={N}")
    alg = gl(N)
    rep.check("Δ(𝒟) = 𝒟 ⊗̇ 𝒟", lambda: grouplike_coproduct(N))
    if pairs is None:
        pairs = [(alg.gen(_idx(N, 1, 1)), alg.gen(_idx(N, 2, 2))),
                 (alg.one(), alg.gen(_idx(N, 1, 2))),
                 (alg.gen(_idx(N, 1, 2)), alg.gen(_idx(N, 2, 1)) * alg.gen(_idx(N, 1, 1)))]

    def leib():
        bad = {}
        for a, b in pairs:
            r = leibniz_grouplike_residual(a, b)
            if any(not e.is_zero() for row in r for e in row):
                bad[(str(a), str(b))] = r
        return bad

    rep.check("D̂(ab)^t = h D̂(a)^t D̂(b)^t", leib)
    return rep


def check_leibniz_agreement(N: int, pairs) -> Report:
    """coproduct_act agrees with act on products."""
    rep = Report(f"Leibniz agreement N={N}")

    def run():
        bad = {}
        for aw, b1, b2 in pairs:
            r = coproduct_act(aw, b1, b2, N) - act(aw, b1 * b2, N)
            if not r.is_zero():
                bad[(aw, str(b1), str(b2))] = r
        return bad

    rep.check("Δ-route action = act on the product", run)
    return rep


def check_welldefined(N: int, samples) -> Report:
    """act(w, u r v) = 0 for relation elements r; samples are (w, u, (k,s,p,q), v) with u, v words."""
    rep = Report(f"action well-defined N={N}")

    def run():
        bad = {}
        for w, u, ksq, v in samples:
            words = [(c, tuple(u) + rw + tuple(v)) for c, rw in relation_words(N, *ksq)]
            r = act(w, words, N)
            if not r.is_zero():
                bad[(tuple(w), tuple(u), ksq, tuple(v))] = r
        return bad

    rep.check("act(w, u r v) = 0", run)
    return rep


def double_report(N: int) -> Report:
    rep = Report(f"quantum double N={N}")
    for sub in (check_compatibility(N), check_compatibility(N, VARIANT), check_coassociativity(N),
                check_relation_annihilation(N, 2 if N == 2 else 1), check_second_order_action(N),
                transpose_variant_equivalence(N), check_shifted_agreement(N), grouplike_check(N)):
        rep.extend(sub)
    return rep

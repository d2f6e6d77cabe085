"""PBW normal forms for U(gl(N)_h), U(u(2)_h) and the extension by rho.

Generators are ordered row-major ``l[1,1] < l[1,2] < ... < l[N,N]`` for
gl(N) and ``t < x < y < z`` for the compact form.  With ``h = 2*i*hb``::

    [l_i^j, l_k^s] = h (l_i^s delta_k^j - l_k^j delta_i^s)
    [x, y] = h z,  [y, z] = h x,  [z, x] = h y,  t central

The extension ``U2_EXT`` adjoins a central rho with ``rho^2 = x^2+y^2+z^2+hb^2``
and a central inverse ``rho^-1``.  Normal forms keep rho exponents <= 1; since
negative exponents make such forms non-unique (``rho^-1 (x^2+y^2+z^2+hb^2)``
is ``rho``), equality is decided after clearing rho-denominators and
:meth:`NCPoly.canonical` cancels common rho factors.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, NamedTuple, Sequence, Tuple

from qpd import kernel
from qpd.errors import QPDError
from qpd.scalars import (
    GaussRational,
    HbarScalar,
    ONE,
    PoleError,
    ZERO,
    t_add,
    t_from,
    t_inv,
    t_mul,
    t_neg,
    t_str,
)

Key = Tuple[int, ...]


class AlgebraMismatch(QPDError, ValueError):
    pass


class Monomial(NamedTuple):
    exps: Tuple[int, ...]
    rho_exp: int = 0

    def degree(self) -> int:
        return sum(self.exps)


class Algebra:
    """An algebra preset: ordered generators and their commutation table."""

    def __init__(self, kind: str, names: Sequence[str], comm: dict, rho_rule=None,
                 N: int = None, tables=None, classical=None):
        self.kind = kind
        self.names = tuple(names)
        self.n = len(names)
        self.N = N
        self.comm = comm
        self.rho_rule = rho_rule
        self.has_rho = rho_rule is not None
        self.is_classical = classical is None
        self.classical = classical if classical is not None else self
        self.tables = tables if tables is not None else kernel.Tables(self.n, comm, rho_rule)
        self._index = {name: k for k, name in enumerate(self.names)}

    def __repr__(self):
        return f"<Algebra {self.kind}{'' if self.N is None else f'({self.N})'}>"

    # -- element constructors ------------------------------------------------

    def index(self, name) -> int:
        if isinstance(name, int):
            if not 0 <= name < self.n:
                raise KeyError(name)
            return name
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r} for {self!r}") from None

    def key(self, exps=None, rho: int = 0, hb: int = 0) -> Key:
        exps = tuple(exps) if exps is not None else (0,) * self.n
        return exps + (rho, hb)

    def gen(self, name) -> "NCPoly":
        k = self.index(name)
        exps = [0] * self.n
        exps[k] = 1
        return NCPoly(self, {self.key(exps): ONE})

    def gens(self):
        return [self.gen(k) for k in range(self.n)]

    def const(self, c) -> "NCPoly":
        return NCPoly.scalar(self, c)

    def one(self) -> "NCPoly":
        return NCPoly(self, {self.key(): ONE})

    def zero(self) -> "NCPoly":
        return NCPoly(self, {})

    def hbar(self, power: int = 1) -> "NCPoly":
        return NCPoly(self, {self.key(hb=power): ONE})

    def rho(self, power: int = 1) -> "NCPoly":
        if not self.has_rho:
            raise AlgebraMismatch(f"{self!r} has no rho")
        return NCPoly(self, kernel.reduce_rho(self.tables, {self.key(rho=power): ONE}))

    def word(self, *names) -> "NCPoly":
        out = self.one()
        for name in names:
            out = out * self.gen(name)
        return out


def _gl_comm(N: int) -> dict:
    def idx(i, j):
        return (i - 1) * N + (j - 1)

    comm = {}
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            for k in range(1, N + 1):
                for s in range(1, N + 1):
                    a, b = idx(i, j), idx(k, s)
                    if a <= b:
                        continue
                    acc = {}
                    if k == j:
                        acc[idx(i, s)] = acc.get(idx(i, s), 0) + 2
                    if i == s:
                        acc[idx(k, j)] = acc.get(idx(k, j), 0) - 2
                    entries = [(g, 1, 0, c) for g, c in acc.items() if c]
                    if entries:
                        comm[(a, b)] = entries
    return comm


@lru_cache(maxsize=None)
def gl(N: int) -> Algebra:
    """The preset U(gl(N)_h) with generators ``l[i,j]``."""
    if N < 1:
        raise ValueError("N must be positive")
    names = [f"l[{i},{j}]" for i in range(1, N + 1) for j in range(1, N + 1)]
    cl = Algebra("GL_CL", names, {}, N=N)
    return Algebra("GL", names, _gl_comm(N), N=N, classical=cl)


_U2_COMM = {
    (2, 1): [(3, 1, 0, -2)],  # [y, x] = -h z
    (3, 1): [(2, 1, 0, 2)],   # [z, x] = h y
    (3, 2): [(1, 1, 0, -2)],  # [z, y] = -h x
}
_RHO_RULE = [
    ((0, 2, 0, 0), 0, 1, 0),
    ((0, 0, 2, 0), 0, 1, 0),
    ((0, 0, 0, 2), 0, 1, 0),
    ((0, 0, 0, 0), 2, 1, 0),
]

# hb = 0: commuting t, x, y, z and r^2 = x^2 + y^2 + z^2
U2_CL = Algebra("U2_CL", ["t", "x", "y", "z"], {}, _RHO_RULE[:3])
U2_EXT = Algebra("U2_EXT", ["t", "x", "y", "z"], _U2_COMM, _RHO_RULE, classical=U2_CL)
U2 = Algebra("U2", ["t", "x", "y", "z"], _U2_COMM, tables=U2_EXT.tables, classical=U2_CL)
U2.has_rho = False


def _common(a: Algebra, b: Algebra) -> Algebra:
    if a is b:
        return a
    if {a.kind, b.kind} == {"U2", "U2_EXT"}:
        return U2_EXT
    raise AlgebraMismatch(f"cannot combine {a!r} and {b!r}")


# ---------------------------------------------------------------------------
# NCPoly
# ---------------------------------------------------------------------------

def _is_scalar_like(v) -> bool:
    return isinstance(v, (int, Fraction, GaussRational, HbarScalar, complex))


def _scalar_terms(c) -> Dict[int, tuple]:
    """``{hb exponent: triple}`` for a scalar; rejects non-Laurent HbarScalars."""
    if isinstance(c, HbarScalar):
        return c.laurent()
    t = t_from(c)
    return {0: t} if t != ZERO else {}


class NCPoly:
    """A normal-ordered element: ``{key: coefficient}`` over one preset.

    ``key`` is the generator exponent vector followed by the rho and hb
    exponents; coefficients are Gaussian-rational triples.
    """

    __slots__ = ("algebra", "_t")

    def __init__(self, algebra: Algebra, terms=None):
        self.algebra = algebra
        self._t = terms if terms is not None else {}

    @classmethod
    def scalar(cls, algebra: Algebra, c) -> "NCPoly":
        n = algebra.n
        return cls(algebra, {(0,) * n + (0, k): v for k, v in _scalar_terms(c).items()})

    @classmethod
    def from_terms(cls, algebra: Algebra, terms: Dict[Monomial, object]) -> "NCPoly":
        """Build from ``{Monomial: scalar}``; reduces rho exponents."""
        raw = {}
        for mono, c in terms.items():
            mono = Monomial(*mono) if not isinstance(mono, Monomial) else mono
            if mono.rho_exp and not algebra.has_rho:
                raise AlgebraMismatch(f"{algebra!r} has no rho")
            for h, v in _scalar_terms(c).items():
                key = tuple(mono.exps) + (mono.rho_exp, h)
                raw[key] = t_add(raw.get(key, ZERO), v)
        raw = {k: v for k, v in raw.items() if v != ZERO}
        return cls(algebra, kernel.reduce_rho(algebra.tables, raw))

    # -- inspection ------------------------------------------------------------

    @property
    def terms(self) -> Dict[Key, tuple]:
        return self._t

    def items(self):
        """Yield ``(Monomial, HbarScalar)`` with hb powers folded into the coefficient."""
        n = self.algebra.n
        grouped: Dict[Monomial, dict] = {}
        for key, c in self._t.items():
            grouped.setdefault(Monomial(key[:n], key[n]), {})[key[n + 1]] = c
        for mono, lt in grouped.items():
            yield mono, HbarScalar.from_laurent(lt)

    def coefficient(self, mono) -> HbarScalar:
        mono = Monomial(*mono) if not isinstance(mono, Monomial) else mono
        n = self.algebra.n
        lt = {k[n + 1]: c for k, c in self._t.items() if k[:n] == tuple(mono.exps) and k[n] == mono.rho_exp}
        return HbarScalar.from_laurent(lt)

    def monomials(self):
        n = self.algebra.n
        return sorted({Monomial(k[:n], k[n]) for k in self._t})

    def degree(self) -> int:
        n = self.algebra.n
        return max((sum(k[:n]) for k in self._t), default=-1)

    def is_scalar(self) -> bool:
        n = self.algebra.n
        return all(not any(k[:n + 1]) for k in self._t)

    def scalar_value(self) -> HbarScalar:
        if not self.is_scalar():
            raise ValueError(f"{self} is not a scalar")
        n = self.algebra.n
        return HbarScalar.from_laurent({k[n + 1]: c for k, c in self._t.items()})

    def min_rho(self) -> int:
        n = self.algebra.n
        return min((k[n] for k in self._t), default=0)

    def __len__(self):
        return len(self._t)

    def copy(self) -> "NCPoly":
        return NCPoly(self.algebra, dict(self._t))

    # -- arithmetic ---------------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, NCPoly):
            alg = _common(self.algebra, other.algebra)
            return alg, other
        if _is_scalar_like(other):
            return self.algebra, NCPoly.scalar(self.algebra, other)
        return None, None

    def __add__(self, other):
        alg, o = self._lift(other)
        if alg is None:
            return NotImplemented
        out = dict(self._t)
        for k, v in o._t.items():
            old = out.get(k)
            if old is None:
                out[k] = v
            else:
                s = t_add(old, v)
                if s == ZERO:
                    del out[k]
                else:
                    out[k] = s
        return NCPoly(alg, out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.algebra, {k: t_neg(v) for k, v in self._t.items()})

    def __sub__(self, other):
        alg, o = self._lift(other)
        if alg is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        alg, o = self._lift(other)
        if alg is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> "NCPoly":
        """Multiply by a scalar (int, Fraction, GaussRational, Laurent HbarScalar)."""
        st = _scalar_terms(c)
        if not st:
            return NCPoly(self.algebra, {})
        n1 = self.algebra.n + 1
        out = {}
        for h, c in st.items():
            for k, v in self._t.items():
                nk = k[:n1] + (k[n1] + h,)
                p = t_mul(v, c)
                old = out.get(nk)
                out[nk] = p if old is None else t_add(old, p)
        return NCPoly(self.algebra, {k: v for k, v in out.items() if v != ZERO})

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            alg = _common(self.algebra, other.algebra)
            return NCPoly(alg, kernel.mul(alg.tables, self._t, other._t))
        if _is_scalar_like(other):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if _is_scalar_like(other):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if _is_scalar_like(other):
            return self.scale(HbarScalar(other).inverse())
        if isinstance(other, NCPoly):
            return self * other.unit_inverse()
        return NotImplemented

    def unit_inverse(self) -> "NCPoly":
        """Inverse of a single term ``c * hb^k * rho^r`` (the only units handled)."""
        n = self.algebra.n
        if len(self._t) != 1:
            raise ZeroDivisionError(f"{self} is not an invertible monomial")
        (key, c), = self._t.items()
        if any(key[:n]):
            raise ZeroDivisionError(f"{self} is not an invertible monomial")
        r = key[n]
        if r and not self.algebra.has_rho:
            raise AlgebraMismatch("rho inverse needs U2_EXT")
        return NCPoly(self.algebra, {(0,) * n + (-r, -key[n + 1]): t_inv(c)})

    def __pow__(self, p: int):
        if p < 0:
            return self.unit_inverse() ** (-p)
        out = NCPoly(self.algebra, {self.algebra.key(): ONE})
        base = self
        while p:
            if p & 1:
                out = out * base
            p >>= 1
            if p:
                base = base * base
        return out

    # -- equality ---------------------------------------------------------------

    def cleared(self) -> Tuple[int, "NCPoly"]:
        """``(k, P)`` with ``self = rho^-k P`` and P free of negative rho powers."""
        m = self.min_rho()
        if m >= 0:
            return 0, self
        n = self.algebra.n
        shifted = {k[:n] + (k[n] - m, k[n + 1]): v for k, v in self._t.items()}
        return -m, NCPoly(self.algebra, kernel.reduce_rho(self.algebra.tables, shifted))

    def is_zero(self) -> bool:
        if not self._t:
            return True
        return not self.cleared()[1]._t

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, NCPoly) or _is_scalar_like(other):
            try:
                return (self - other).is_zero()
            except AlgebraMismatch:
                return False
        return NotImplemented

    def __hash__(self):
        c = self.canonical()
        return hash(frozenset(c._t.items()))

    def canonical(self) -> "NCPoly":
        """Unique representative: rho exponents <= 1, common rho factors cancelled."""
        k, P = self.cleared()
        if k == 0:
            return P
        n = self.algebra.n
        m = -k
        terms = P._t
        while m < 0:
            p0 = {key: v for key, v in terms.items() if key[n] == 0}
            q1 = _divide_by_rho_square(self.algebra, p0)
            if q1 is None:
                break
            new = {}
            for key, v in terms.items():
                if key[n] == 1:
                    new[key[:n] + (0, key[n + 1])] = v
            for key, v in q1.items():
                new[key[:n] + (1, key[n + 1])] = v
            terms = new
            m += 1
        return NCPoly(self.algebra, {key[:n] + (key[n] + m, key[n + 1]): v for key, v in terms.items()})

    # -- maps ---------------------------------------------------------------------

    def classical_limit(self) -> "NCPoly":
        """Image under hb = 0 in the commutative classical preset.

        The canonical form is used, so negative hb powers are genuine poles.
        """
        if self.algebra.is_classical:
            return self
        n1 = self.algebra.n + 1
        out = {}
        for k, v in self.canonical()._t.items():
            if k[n1] < 0:
                raise PoleError(f"{self} has no classical limit (hb^{k[n1]} term)")
            if k[n1] == 0:
                out[k] = v
        cl = self.algebra.classical
        return NCPoly(cl, kernel.reduce_rho(cl.tables, out))

    def substitute(self, images: Sequence["NCPoly"], target: Algebra = None) -> "NCPoly":
        """Algebra map sending generator k to ``images[k]``; rho and hb are kept."""
        target = target or images[0].algebra
        n = self.algebra.n
        cache = {}
        out = NCPoly(target, {})
        for key, v in self._t.items():
            g = key[:n]
            img = cache.get(g)
            if img is None:
                img = NCPoly(target, {target.key(): ONE})
                for idx, e in enumerate(g):
                    for _ in range(e):
                        img = img * images[idx]
                cache[g] = img
            tk = target.key(rho=key[n], hb=key[n + 1])
            out = out + img * NCPoly(target, {tk: v})
        return out

    # -- text ---------------------------------------------------------------------

    def _sort_key(self, key):
        n = self.algebra.n
        return (sum(key[:n]) + key[n], key[:n], key[n], key[n + 1])

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for key in sorted(self._t, key=self._sort_key, reverse=True):
            parts.append(self._term_text(key, self._t[key]))
        out = parts[0]
        for p in parts[1:]:
            out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
        return out

    def _term_text(self, key, c) -> str:
        n = self.algebra.n
        factors = []
        h = key[n + 1]
        if h:
            factors.append("hb" if h == 1 else f"hb^{h}")
        for idx in range(n):
            e = key[idx]
            if e:
                name = self.algebra.names[idx]
                factors.append(name if e == 1 else f"{name}^{e}")
        r = key[n]
        if r:
            factors.append("rho" if r == 1 else f"rho^{r}")
        if not factors:
            return t_str(c)
        mono = "*".join(factors)
        if c == ONE:
            return mono
        if c == (-1, 0, 1):
            return "-" + mono
        cs = t_str(c)
        if c[0] and c[1]:
            cs = f"({cs})"
        return f"{cs}*{mono}"

    def __repr__(self):
        return f"NCPoly({self.algebra.kind}, {str(self)!r})"


def _divide_by_rho_square(alg: Algebra, p: dict):
    """Exact quotient of a rho-free element by ``x^2+y^2+z^2+hb^2``, or None.

    Leading terms are taken in degree-then-(z, y, x, t)-lex order, in which
    z^2 leads the divisor; a leading monomial without z^2 proves the division
    is not exact.
    """
    if not p:
        return {}
    n = alg.n
    divisor = {alg.key(m, 0, s): (re, im, 1) for m, s, re, im in alg.rho_rule}
    rem = dict(p)
    quo = {}
    while rem:
        lead = max(rem, key=lambda k: (sum(k[:n]),) + tuple(reversed(k[:n])))
        g = lead[:n]
        if g[3] < 2:
            return None
        c = rem[lead]
        qk = g[:3] + (g[3] - 2, 0, lead[n + 1])
        quo[qk] = t_add(quo.get(qk, ZERO), c)
        prod = kernel.mul(alg.tables, {qk: c}, divisor)
        for k, v in prod.items():
            s = t_add(rem.get(k, ZERO), t_neg(v))
            if s == ZERO:
                rem.pop(k, None)
            else:
                rem[k] = s
    return {k: v for k, v in quo.items() if v != ZERO}


# ---------------------------------------------------------------------------
# free-standing operations
# ---------------------------------------------------------------------------

def nc_mul(a: NCPoly, b: NCPoly) -> NCPoly:
    return a * b


def bracket(a: NCPoly, b: NCPoly) -> NCPoly:
    return a * b - b * a


def normal_form(algebra: Algebra, words: Iterable) -> NCPoly:
    """Normal form of ``sum coeff * w`` for ``(coeff, word)`` pairs.

    A word is a sequence of generator names or indices; ``"rho"`` (and
    ``("rho", k)``) may appear in words over U2_EXT.
    """
    out = algebra.zero()
    for coeff, word in words:
        term = algebra.one()
        for g in word:
            term = term * _letter(algebra, g)
        out = out + term.scale(coeff)
    return out


def _letter(algebra: Algebra, g) -> NCPoly:
    if g == "rho":
        return algebra.rho(1)
    if isinstance(g, tuple) and g[0] == "rho":
        return algebra.rho(g[1])
    return algebra.gen(g)


def rho_reduce(algebra: Algebra, mono: Monomial) -> NCPoly:
    return NCPoly.from_terms(algebra, {Monomial(*mono): 1})


def classical_limit(a: NCPoly) -> NCPoly:
    return a.classical_limit()


def rewrite_normal_form(algebra: Algebra, words: Iterable, strategy: str = "leftmost") -> NCPoly:
    """Independent normal-form oracle by plain word rewriting.

    Each step picks one descent ``g_a g_b`` (a > b) in one word, the leftmost
    or the rightmost according to ``strategy``, and replaces it by
    ``g_b g_a + [g_a, g_b]``.  rho powers >= 2 are rewritten by appending the
    letters of ``x x + y y + z z + hb^2``.  Shares nothing with the kernel
    besides the commutation table.
    """
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(strategy)
    todo: Dict[tuple, tuple] = {}

    def push(word, r, h, c):
        key = (word, r, h)
        s = t_add(todo.get(key, ZERO), c)
        if s == ZERO:
            todo.pop(key, None)
        else:
            todo[key] = s

    for coeff, word in words:
        letters, r = [], 0
        for g in word:
            if g == "rho":
                r += 1
            elif isinstance(g, tuple) and g[0] == "rho":
                r += g[1]
            else:
                letters.append(algebra.index(g))
        for h, c in _scalar_terms(coeff).items():
            push(tuple(letters), r, h, c)

    done: Dict[tuple, tuple] = {}
    while todo:
        (word, r, h), c = todo.popitem()
        if r >= 2:
            for m, s, re, im in algebra.rho_rule:
                extra = tuple(k for k in range(algebra.n) for _ in range(m[k]))
                push(word + extra, r - 2, h + s, t_mul(c, (re, im, 1)))
            continue
        pos = [p for p in range(len(word) - 1) if word[p] > word[p + 1]]
        if not pos:
            key = (word, r, h)
            s = t_add(done.get(key, ZERO), c)
            if s == ZERO:
                done.pop(key, None)
            else:
                done[key] = s
            continue
        p = pos[0] if strategy == "leftmost" else pos[-1]
        a, b = word[p], word[p + 1]
        push(word[:p] + (b, a) + word[p + 2:], r, h, c)
        for gen, s, re, im in algebra.comm.get((a, b), ()):
            push(word[:p] + (gen,) + word[p + 2:], r, h + s, t_mul(c, (re, im, 1)))

    out = {}
    for (word, r, h), c in done.items():
        exps = [0] * algebra.n
        for g in word:
            exps[g] += 1
        key = tuple(exps) + (r, h)
        s = t_add(out.get(key, ZERO), c)
        if s == ZERO:
            out.pop(key, None)
        else:
            out[key] = s
    return NCPoly(algebra, out)


# ---------------------------------------------------------------------------
# gl(2) <-> u(2)
# ---------------------------------------------------------------------------

def _u2_images_of_gl2():
    t, x, y, z = U2.gens()
    i = GaussRational(0, 1)
    # a = t - i z, b = -i x - y, c = -i x + y, d = t + i z
    return [t - z * i, -(x * i) - y, -(x * i) + y, t + z * i]


def _gl2_images_of_u2():
    a, b, c, d = gl(2).gens()
    i = GaussRational(0, 1)
    half = Fraction(1, 2)
    # t = (a+d)/2, x = i(b+c)/2, y = (c-b)/2, z = i(a-d)/2
    return [(a + d) * half, (b + c) * (i * half), (c - b) * half, (a - d) * (i * half)]


def basis_change_gl2_to_u2(a: NCPoly) -> NCPoly:
    if a.algebra is not gl(2):
        raise AlgebraMismatch("expected an element of U(gl(2)_h)")
    return a.substitute(_u2_images_of_gl2(), U2)


def basis_change_u2_to_gl2(a: NCPoly) -> NCPoly:
    if a.algebra.kind not in ("U2", "U2_EXT"):
        raise AlgebraMismatch("expected an element of U(u(2)_h)")
    if any(k[a.algebra.n] for k in a.terms):
        raise AlgebraMismatch("rho has no image in U(gl(2)_h)")
    return a.substitute(_gl2_images_of_u2(), gl(2))

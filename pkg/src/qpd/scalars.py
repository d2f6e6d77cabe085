"""Exact coefficient arithmetic.

Two layers live here:

* Gaussian rationals ``(re + i*im)``.  The hot paths elsewhere in the package
  work on the raw normalized triple ``(a, b, d)`` meaning ``(a + b*i)/d`` with
  ``d > 0`` and ``gcd(a, b, d) == 1``; :class:`GaussRational` is the public,
  immutable wrapper around such a triple.
* :class:`HbarScalar`, univariate rational functions in the formal deformation
  parameter ``hb`` (written ĥ in formulas) with Gaussian rational coefficients.
  The Lie-algebra parameter ``h`` is always the abbreviation ``2*i*hb``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Iterable, Sequence, Tuple

from qpd.errors import QPDError

Triple = Tuple[int, int, int]

ZERO: Triple = (0, 0, 1)
ONE: Triple = (1, 0, 1)
I_UNIT: Triple = (0, 1, 1)


class PoleError(QPDError, ZeroDivisionError):
    """Evaluation hit a vanishing denominator (e.g. a 1/hb term at hb = 0)."""


# ---------------------------------------------------------------------------
# raw triple arithmetic
# ---------------------------------------------------------------------------

def norm(a: int, b: int, d: int) -> Triple:
    if d < 0:
        a, b, d = -a, -b, -d
    if d == 0:
        raise ZeroDivisionError("zero denominator")
    if not a and not b:
        return ZERO
    g = gcd(a, b, d)
    if g != 1:
        return (a // g, b // g, d // g)
    return (a, b, d)


def t_add(p: Triple, q: Triple) -> Triple:
    a, b, d = p
    c, e, f = q
    if d == f:
        return norm(a + c, b + e, d)
    return norm(a * f + c * d, b * f + e * d, d * f)


def t_sub(p: Triple, q: Triple) -> Triple:
    return t_add(p, (-q[0], -q[1], q[2]))


def t_mul(p: Triple, q: Triple) -> Triple:
    a, b, d = p
    c, e, f = q
    return norm(a * c - b * e, a * e + b * c, d * f)


def t_neg(p: Triple) -> Triple:
    return (-p[0], -p[1], p[2])


def t_inv(p: Triple) -> Triple:
    a, b, d = p
    n = a * a + b * b
    if n == 0:
        raise ZeroDivisionError("inverse of zero")
    # d/(a+bi) = d(a-bi)/(a^2+b^2)
    return norm(d * a, -d * b, n)


def t_from(value) -> Triple:
    """Coerce an int, Fraction, complex-with-int-parts or GaussRational."""
    if isinstance(value, GaussRational):
        return value.triple
    if isinstance(value, tuple) and len(value) == 3:
        return norm(*value)
    if isinstance(value, bool):
        value = int(value)
    if isinstance(value, int):
        return (value, 0, 1) if value else ZERO
    if isinstance(value, Rational):
        return norm(int(value.numerator), 0, int(value.denominator))
    if isinstance(value, complex):
        re, im = Fraction(value.real), Fraction(value.imag)
        den = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        return norm(int(re * den), int(im * den), den)
    raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")


def t_str(p: Triple) -> str:
    """Text form: ``3/2``, ``2*i``, ``-1/2*i``, ``3/2 + 1/4*i``."""
    a, b, d = p
    re = Fraction(a, d)
    im = Fraction(b, d)
    if im == 0:
        return str(re)
    if im == 1:
        ims = "i"
    elif im == -1:
        ims = "-i"
    else:
        ims = f"{im}*i"
    if re == 0:
        return ims
    if ims.startswith("-"):
        return f"{re} - {ims[1:]}"
    return f"{re} + {ims}"


# ---------------------------------------------------------------------------
# GaussRational
# ---------------------------------------------------------------------------

class GaussRational:
    """An element ``re + i*im`` of Q(i), kept in lowest terms."""

    __slots__ = ("triple",)

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussRational) and im == 0:
            self.triple = re.triple
            return
        r = t_from(re)
        if im:
            r = t_add(r, t_mul(I_UNIT, t_from(im)))
        self.triple = r

    @classmethod
    def from_triple(cls, p: Triple) -> "GaussRational":
        obj = cls.__new__(cls)
        obj.triple = p
        return obj

    @property
    def re(self) -> Fraction:
        return Fraction(self.triple[0], self.triple[2])

    @property
    def im(self) -> Fraction:
        return Fraction(self.triple[1], self.triple[2])

    def is_zero(self) -> bool:
        return self.triple == ZERO

    def conjugate(self) -> "GaussRational":
        a, b, d = self.triple
        return GaussRational.from_triple((a, -b, d))

    def _coerce(self, other):
        if isinstance(other, GaussRational):
            return other.triple
        try:
            return t_from(other)
        except TypeError:
            return None

    def __add__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return GaussRational.from_triple(t_add(self.triple, q))

    __radd__ = __add__

    def __sub__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return GaussRational.from_triple(t_sub(self.triple, q))

    def __rsub__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return GaussRational.from_triple(t_sub(q, self.triple))

    def __mul__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return GaussRational.from_triple(t_mul(self.triple, q))

    __rmul__ = __mul__

    def __truediv__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return GaussRational.from_triple(t_mul(self.triple, t_inv(q)))

    def __rtruediv__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return GaussRational.from_triple(t_mul(q, t_inv(self.triple)))

    def __neg__(self):
        return GaussRational.from_triple(t_neg(self.triple))

    def __pow__(self, n: int):
        base = self.triple
        if n < 0:
            base, n = t_inv(base), -n
        out = ONE
        while n:
            if n & 1:
                out = t_mul(out, base)
            base = t_mul(base, base)
            n >>= 1
        return GaussRational.from_triple(out)

    def inverse(self) -> "GaussRational":
        return GaussRational.from_triple(t_inv(self.triple))

    def __eq__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self.triple == q

    def __hash__(self):
        a, b, d = self.triple
        if b == 0:
            return hash(Fraction(a, d))
        return hash(self.triple)

    def __bool__(self):
        return self.triple != ZERO

    def __repr__(self):
        return f"GaussRational({t_str(self.triple)!r})"

    def __str__(self):
        return t_str(self.triple)


I = GaussRational(0, 1)


# ---------------------------------------------------------------------------
# univariate polynomials over Q(i): tuples of triples, lowest degree first
# ---------------------------------------------------------------------------

Poly = Tuple[Triple, ...]


def _trim(c: list) -> Poly:
    while c and c[-1] == ZERO:
        c.pop()
    return tuple(c)


def p_add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    out = []
    for k in range(n):
        if k >= len(p):
            out.append(q[k])
        elif k >= len(q):
            out.append(p[k])
        else:
            out.append(t_add(p[k], q[k]))
    return _trim(out)


def p_neg(p: Poly) -> Poly:
    return tuple(t_neg(c) for c in p)


def p_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == ZERO:
            continue
        for j, b in enumerate(q):
            out[i + j] = t_add(out[i + j], t_mul(a, b))
    return _trim(out)


def p_scale(p: Poly, c: Triple) -> Poly:
    if c == ZERO:
        return ()
    return tuple(t_mul(a, c) for a in p)


def p_divmod(p: Poly, q: Poly) -> Tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    inv_lead = t_inv(q[-1])
    quo = [ZERO] * max(len(p) - len(q) + 1, 0)
    while len(r) >= len(q) and r:
        k = len(r) - len(q)
        c = t_mul(r[-1], inv_lead)
        quo[k] = c
        for j, b in enumerate(q):
            r[k + j] = t_sub(r[k + j], t_mul(c, b))
        r = list(_trim(r))
    return _trim(quo), tuple(r)


def p_monic(p: Poly) -> Poly:
    return p_scale(p, t_inv(p[-1]))


def p_gcd(p: Poly, q: Poly) -> Poly:
    while q:
        p, q = q, p_divmod(p, q)[1]
    return p_monic(p) if p else ()


def p_eval(p: Poly, v: Triple) -> Triple:
    acc = ZERO
    for c in reversed(p):
        acc = t_add(t_mul(acc, v), c)
    return acc


def p_str(p: Poly, var: str = "hb") -> str:
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == ZERO:
            continue
        parts.append(_term_str(c, var, k))
    return _join_terms(parts)


def _term_str(c: Triple, var: str, k: int) -> str:
    mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
    if not mono:
        return t_str(c)
    if c == ONE:
        return mono
    if c == (-1, 0, 1):
        return "-" + mono
    cs = t_str(c)
    if c[0] and c[1]:
        cs = f"({cs})"
    return f"{cs}*{mono}"


def _join_terms(parts: Sequence[str]) -> str:
    out = parts[0]
    for s in parts[1:]:
        if s.startswith("-"):
            out += " - " + s[1:]
        else:
            out += " + " + s
    return out


# ---------------------------------------------------------------------------
# HbarScalar
# ---------------------------------------------------------------------------

class HbarScalar:
    """A rational function ``num(hb)/den(hb)`` over Q(i).

    Stored reduced with a monic denominator, so ``==`` is structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, value=0):
        if isinstance(value, HbarScalar):
            self.num, self.den = value.num, value.den
            return
        c = t_from(value)
        self.num = (c,) if c != ZERO else ()
        self.den = (ONE,)

    @classmethod
    def from_polys(cls, num: Iterable, den: Iterable = (ONE,)) -> "HbarScalar":
        num = _trim([t_from(c) for c in num])
        den = _trim([t_from(c) for c in den])
        if not den:
            raise ZeroDivisionError("zero denominator")
        obj = cls.__new__(cls)
        if not num:
            obj.num, obj.den = (), (ONE,)
            return obj
        g = p_gcd(num, den)
        if len(g) > 1:
            num = p_divmod(num, g)[0]
            den = p_divmod(den, g)[0]
        lead = t_inv(den[-1])
        obj.num = p_scale(num, lead)
        obj.den = p_scale(den, lead)
        return obj

    @classmethod
    def hbar(cls, power: int = 1) -> "HbarScalar":
        if power >= 0:
            return cls.from_polys([ZERO] * power + [ONE])
        return cls.from_polys([ONE], [ZERO] * (-power) + [ONE])

    @classmethod
    def from_laurent(cls, terms: dict) -> "HbarScalar":
        """Build from ``{hb exponent: coefficient}`` (negative exponents allowed)."""
        if not terms:
            return cls(0)
        low = min(terms)
        shift = -low if low < 0 else 0
        num = [ZERO] * (max(terms) + shift + 1)
        for k, c in terms.items():
            num[k + shift] = t_from(c)
        return cls.from_polys(num, [ZERO] * shift + [ONE])

    def laurent(self) -> dict:
        """``{hb exponent: triple}`` when the denominator is a power of hb.

        Raises ValueError for genuine rational functions such as 1/(hb^2+1).
        """
        if len(self.den) - 1 and any(c != ZERO for c in self.den[:-1]):
            raise ValueError(f"{self} is not a Laurent polynomial in hb")
        shift = len(self.den) - 1
        return {k - shift: c for k, c in enumerate(self.num) if c != ZERO}

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    @staticmethod
    def _wrap(other):
        if isinstance(other, HbarScalar):
            return other
        try:
            return HbarScalar(other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return HbarScalar.from_polys(p_add(self.num, o.num), self.den)
        return HbarScalar.from_polys(
            p_add(p_mul(self.num, o.den), p_mul(o.num, self.den)),
            p_mul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self):
        obj = HbarScalar.__new__(HbarScalar)
        obj.num, obj.den = p_neg(self.num), self.den
        return obj

    def __sub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return HbarScalar.from_polys(p_mul(self.num, o.num), p_mul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self) -> "HbarScalar":
        if not self.num:
            raise ZeroDivisionError("inverse of the zero scalar")
        return HbarScalar.from_polys(self.den, self.num)

    def __truediv__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        base = self if n >= 0 else self.inverse()
        out = HbarScalar(1)
        for _ in range(abs(n)):
            out = out * base
        return out

    def __eq__(self, other):
        o = self._wrap(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"HbarScalar({str(self)!r})"

    def __str__(self):
        n = p_str(self.num)
        if self.den == (ONE,):
            return n
        if " " in n:
            n = f"({n})"
        return f"{n}/({p_str(self.den)})"


def scalar_add(a: HbarScalar, b: HbarScalar) -> HbarScalar:
    return HbarScalar(a) + HbarScalar(b)


def scalar_mul(a: HbarScalar, b: HbarScalar) -> HbarScalar:
    return HbarScalar(a) * HbarScalar(b)


def scalar_inv(a: HbarScalar) -> HbarScalar:
    return HbarScalar(a).inverse()


def substitute_hbar(a: HbarScalar, v) -> GaussRational:
    """Evaluate at ``hb = v``; ``v = 0`` is the classical limit."""
    a = HbarScalar(a)
    vt = t_from(v)
    den = p_eval(a.den, vt)
    if den == ZERO:
        raise PoleError(f"{a} has a pole at hb = {t_str(vt)}")
    return GaussRational.from_triple(t_mul(p_eval(a.num, vt), t_inv(den)))


HB = HbarScalar.hbar(1)
H = HB * GaussRational(0, 2)  # the Lie-bracket parameter h = 2*i*hb

"""Pure-Python PBW multiplication kernel.

Terms are dicts ``key -> (a, b, d)`` where ``key = gens + (rho, hb)``: the
exponent vector over the ordered generators followed by the exponent of the
central element rho and the (Laurent) exponent of hb.  Coefficients are
normalized Gaussian-rational triples.

Products of PBW monomials have Gaussian-integer structure constants; they are
memoized per algebra in :class:`Tables` as ``{(gens, hb_shift): (re, im)}``.

``_kernel.pyx`` mirrors this module line for line; keep them in sync.
"""

from math import gcd


class Tables:
    """Multiplication tables for one algebra preset.

    comm[(a, b)] for a > b lists ``(gen, hb_shift, re, im)`` with
    ``g_a g_b - g_b g_a = sum (re + i*im) hb^hb_shift g_gen``.
    rho_rule lists ``(gens, hb_shift, re, im)`` for the rewrite of rho^2, or is
    None when rho is not adjoined.
    """

    def __init__(self, ngens, comm, rho_rule=None):
        self.n = ngens
        self.comm = dict(comm)
        self.rho_rule = rho_rule
        self.units = tuple(tuple(1 if k == g else 0 for k in range(ngens)) for g in range(ngens))
        self.rmul = {}
        self.mmul = {}
        self.rho_pows = {}


def _accum(out, key, re, im):
    old = out.get(key)
    if old is None:
        out[key] = (re, im)
    else:
        r = old[0] + re
        i = old[1] + im
        if r or i:
            out[key] = (r, i)
        else:
            del out[key]


def right_mul_gen(T, m, g):
    """Normal form of ``m * g_g`` as ``{(gens, hb_shift): (re, im)}``."""
    key = (m, g)
    res = T.rmul.get(key)
    if res is not None:
        return res
    n = T.n
    k = n - 1
    while k > g and m[k] == 0:
        k -= 1
    if k <= g:
        lst = list(m)
        lst[g] += 1
        res = {(tuple(lst), 0): (1, 0)}
        T.rmul[key] = res
        return res
    # m = m' g_k with k > g:  m g = (m' g) g_k + m' [g_k, g]
    lst = list(m)
    lst[k] -= 1
    mp = tuple(lst)
    res = {}
    for (m2, s2), (r2, i2) in right_mul_gen(T, mp, g).items():
        for (m3, s3), (r3, i3) in right_mul_gen(T, m2, k).items():
            _accum(res, (m3, s2 + s3), r2 * r3 - i2 * i3, r2 * i3 + i2 * r3)
    for gen, s1, r1, i1 in T.comm.get((k, g), ()):
        for (m3, s3), (r3, i3) in right_mul_gen(T, mp, gen).items():
            _accum(res, (m3, s1 + s3), r1 * r3 - i1 * i3, r1 * i3 + i1 * r3)
    T.rmul[key] = res
    return res


def mono_mul(T, ga, gb):
    """Normal form of the product of two PBW monomials."""
    key = (ga, gb)
    res = T.mmul.get(key)
    if res is not None:
        return res
    n = T.n
    k = n - 1
    while k >= 0 and gb[k] == 0:
        k -= 1
    if k < 0:
        res = {(ga, 0): (1, 0)}
    else:
        lst = list(gb)
        lst[k] -= 1
        res = {}
        for (m2, s2), (r2, i2) in mono_mul(T, ga, tuple(lst)).items():
            for (m3, s3), (r3, i3) in right_mul_gen(T, m2, k).items():
                _accum(res, (m3, s2 + s3), r2 * r3 - i2 * i3, r2 * i3 + i2 * r3)
    T.mmul[key] = res
    return res


def rho_power(T, k):
    """``(rho^2)^k`` rewritten by the rho rule, as structure constants."""
    res = T.rho_pows.get(k)
    if res is not None:
        return res
    if k == 0:
        res = {(tuple([0] * T.n), 0): (1, 0)}
    else:
        prev = rho_power(T, k - 1)
        res = {}
        for (m1, s1), (r1, i1) in prev.items():
            for m2, s2, r2, i2 in T.rho_rule:
                for (m3, s3), (r3, i3) in mono_mul(T, m1, m2).items():
                    re = r1 * r2 - i1 * i2
                    im = r1 * i2 + i1 * r2
                    _accum(res, (m3, s1 + s2 + s3), re * r3 - im * i3, re * i3 + im * r3)
    T.rho_pows[k] = res
    return res


def _add_into(out, key, a, b, d):
    old = out.get(key)
    if old is None:
        out[key] = (a, b, d)
        return
    c, e, f = old
    if d == f:
        a, b = a + c, b + e
        if not a and not b:
            del out[key]
            return
    else:
        a, b, d = a * f + c * d, b * f + e * d, d * f
        if not a and not b:
            del out[key]
            return
        g = gcd(a, b, d)
        if g != 1:
            a, b, d = a // g, b // g, d // g
    out[key] = (a, b, d)


def _norm3(a, b, d):
    g = gcd(a, b, d)
    if g != 1:
        return (a // g, b // g, d // g)
    return (a, b, d)


def reduce_rho(T, terms):
    """Apply rho^2 -> rule until every rho exponent is at most 1."""
    if T.rho_rule is None:
        return terms
    n = T.n
    if all(key[n] < 2 for key in terms):
        return terms
    out = {}
    for key, (a, b, d) in terms.items():
        r = key[n]
        if r < 2:
            _add_into(out, key, a, b, d)
            continue
        g = key[:n]
        h = key[n + 1]
        q, rr = divmod(r, 2)
        for (m3, s3), (r3, i3) in rho_power(T, q).items():
            for (m4, s4), (r4, i4) in mono_mul(T, g, m3).items():
                re = r3 * r4 - i3 * i4
                im = r3 * i4 + i3 * r4
                _add_into(out, m4 + (rr, h + s3 + s4), a * re - b * im, a * im + b * re, d)
    for key, (a, b, d) in out.items():
        out[key] = _norm3(a, b, d)
    return out


def mul(T, A, B):
    """Product of two term dicts."""
    n = T.n
    out = {}
    for ka, (a1, b1, d1) in A.items():
        ga = ka[:n]
        ra = ka[n]
        ha = ka[n + 1]
        for kb, (a2, b2, d2) in B.items():
            a = a1 * a2 - b1 * b2
            b = a1 * b2 + b1 * a2
            d = d1 * d2
            r = ra + kb[n]
            h = ha + kb[n + 1]
            for (m3, s3), (r3, i3) in mono_mul(T, ga, kb[:n]).items():
                _add_into(out, m3 + (r, h + s3), a * r3 - b * i3, a * i3 + b * r3, d)
    for key, (a, b, d) in out.items():
        out[key] = _norm3(a, b, d)
    return reduce_rho(T, out)

# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled PBW multiplication kernel; same interface and results as ``_kernel_py``.

Exponents and loop indices are C integers; coefficients stay Python ints so
nothing can overflow.
"""

from math import gcd


cdef class Tables:
    cdef public Py_ssize_t n
    cdef public dict comm
    cdef public object rho_rule
    cdef public tuple units
    cdef public dict rmul
    cdef public dict mmul
    cdef public dict rho_pows

    def __init__(self, ngens, comm, rho_rule=None):
        self.n = ngens
        self.comm = dict(comm)
        self.rho_rule = rho_rule
        self.units = tuple(tuple(1 if k == g else 0 for k in range(ngens)) for g in range(ngens))
        self.rmul = {}
        self.mmul = {}
        self.rho_pows = {}


cdef inline void _accum(dict out, object key, object re, object im):
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


cdef dict _right_mul_gen(Tables T, tuple m, Py_ssize_t g):
    key = (m, g)
    cdef dict res = T.rmul.get(key)
    if res is not None:
        return res
    cdef Py_ssize_t k = T.n - 1
    while k > g and m[k] == 0:
        k -= 1
    cdef list lst
    if k <= g:
        lst = list(m)
        lst[g] += 1
        res = {(tuple(lst), 0): (1, 0)}
        T.rmul[key] = res
        return res
    lst = list(m)
    lst[k] -= 1
    cdef tuple mp = tuple(lst)
    res = {}
    cdef Py_ssize_t s2, s3, s1
    for (m2, s2), (r2, i2) in _right_mul_gen(T, mp, g).items():
        for (m3, s3), (r3, i3) in _right_mul_gen(T, m2, k).items():
            _accum(res, (m3, s2 + s3), r2 * r3 - i2 * i3, r2 * i3 + i2 * r3)
    for gen, s1, r1, i1 in T.comm.get((k, g), ()):
        for (m3, s3), (r3, i3) in _right_mul_gen(T, mp, gen).items():
            _accum(res, (m3, s1 + s3), r1 * r3 - i1 * i3, r1 * i3 + i1 * r3)
    T.rmul[key] = res
    return res


def right_mul_gen(Tables T, tuple m, Py_ssize_t g):
    return _right_mul_gen(T, m, g)


cdef dict _mono_mul(Tables T, tuple ga, tuple gb):
    key = (ga, gb)
    cdef dict res = T.mmul.get(key)
    if res is not None:
        return res
    cdef Py_ssize_t k = T.n - 1
    while k >= 0 and gb[k] == 0:
        k -= 1
    cdef list lst
    cdef Py_ssize_t s2, s3
    if k < 0:
        res = {(ga, 0): (1, 0)}
    else:
        lst = list(gb)
        lst[k] -= 1
        res = {}
        for (m2, s2), (r2, i2) in _mono_mul(T, ga, tuple(lst)).items():
            for (m3, s3), (r3, i3) in _right_mul_gen(T, m2, k).items():
                _accum(res, (m3, s2 + s3), r2 * r3 - i2 * i3, r2 * i3 + i2 * r3)
    T.mmul[key] = res
    return res


def mono_mul(Tables T, tuple ga, tuple gb):
    return _mono_mul(T, ga, gb)


cdef dict _rho_power(Tables T, Py_ssize_t k):
    cdef dict res = T.rho_pows.get(k)
    if res is not None:
        return res
    cdef dict prev
    cdef Py_ssize_t s1, s2, s3
    if k == 0:
        res = {(tuple([0] * T.n), 0): (1, 0)}
    else:
        prev = _rho_power(T, k - 1)
        res = {}
        for (m1, s1), (r1, i1) in prev.items():
            for m2, s2, r2, i2 in T.rho_rule:
                for (m3, s3), (r3, i3) in _mono_mul(T, m1, m2).items():
                    re = r1 * r2 - i1 * i2
                    im = r1 * i2 + i1 * r2
                    _accum(res, (m3, s1 + s2 + s3), re * r3 - im * i3, re * i3 + im * r3)
    T.rho_pows[k] = res
    return res


def rho_power(Tables T, Py_ssize_t k):
    return _rho_power(T, k)


cdef inline void _add_into(dict out, object key, object a, object b, object d):
    old = out.get(key)
    if old is None:
        out[key] = (a, b, d)
        return
    c, e, f = old
    if d == f:
        a = a + c
        b = b + e
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


cdef inline tuple _norm3(object a, object b, object d):
    g = gcd(a, b, d)
    if g != 1:
        return (a // g, b // g, d // g)
    return (a, b, d)


def reduce_rho(Tables T, dict terms):
    if T.rho_rule is None:
        return terms
    cdef Py_ssize_t n = T.n
    cdef Py_ssize_t r, q, rr, h, s3, s4
    for key in terms:
        if key[n] >= 2:
            break
    else:
        return terms
    cdef dict out = {}
    for key, (a, b, d) in terms.items():
        r = key[n]
        if r < 2:
            _add_into(out, key, a, b, d)
            continue
        g = key[:n]
        h = key[n + 1]
        q = r // 2
        rr = r - 2 * q
        for (m3, s3), (r3, i3) in _rho_power(T, q).items():
            for (m4, s4), (r4, i4) in _mono_mul(T, g, m3).items():
                re = r3 * r4 - i3 * i4
                im = r3 * i4 + i3 * r4
                _add_into(out, m4 + (rr, h + s3 + s4), a * re - b * im, a * im + b * re, d)
    for key, (a, b, d) in out.items():
        out[key] = _norm3(a, b, d)
    return out


def mul(Tables T, dict A, dict B):
    cdef Py_ssize_t n = T.n
    cdef Py_ssize_t ra, ha, r, h, s3
    cdef dict out = {}
    for ka, (a1, b1, d1) in A.items():
        ga = ka[:n]
        ra = ka[n]
        ha = ka[n + 1]
        for kb, (a2, b2, d2) in B.items():
            a = a1 * a2 - b1 * b2
            b = a1 * b2 + b1 * a2
            d = d1 * d2
            r = ra + <Py_ssize_t>kb[n]
            h = ha + <Py_ssize_t>kb[n + 1]
            for (m3, s3), (r3, i3) in _mono_mul(T, ga, kb[:n]).items():
                _add_into(out, m3 + (r, h + s3), a * r3 - b * i3, a * i3 + b * r3, d)
    for key, (a, b, d) in out.items():
        out[key] = _norm3(a, b, d)
    return reduce_rho(T, out)

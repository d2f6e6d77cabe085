"""Property checks shared by the unit tests and the acceptance run.

Each function returns a list of failure descriptions; empty means pass.
"""

import itertools

from qpd import randgen
from qpd.ncalgebra import U2, U2_EXT, gl, normal_form, rewrite_normal_form
from qpd.scalars import HbarScalar

ALGEBRAS = (U2_EXT, gl(2), gl(3))


def random_words(r, count):
    out = []
    for k in range(count):
        alg = ALGEBRAS[k % len(ALGEBRAS)]
        letters = list(alg.names) + (["rho"] if alg.has_rho else [])
        terms = []
        for _ in range(r.randint(1, 3)):
            w = tuple(r.choice(letters) for _ in range(r.randint(0, 5)))
            c = HbarScalar(randgen.coeff(r)) * HbarScalar.hbar(r.randint(0, 1))
            terms.append((c, w))
        out.append((alg, terms))
    return out


def confluence_failures(count=200, seed=None):
    bad = []
    for alg, terms in random_words(randgen.rng(seed), count):
        kern = normal_form(alg, terms)
        left = rewrite_normal_form(alg, terms, "leftmost")
        right = rewrite_normal_form(alg, terms, "rightmost")
        if not (kern == left == right):
            bad.append(f"{alg!r} {terms}: {kern} | {left} | {right}")
    return bad


def associativity_failures(count=200, seed=None):
    r = randgen.rng(seed)
    bad = []
    for k in range(count):
        alg = ALGEBRAS[k % len(ALGEBRAS)]
        a, b, c = (randgen.poly(r, alg, max_deg=3) for _ in range(3))
        if alg.has_rho:
            a = a * alg.rho(r.randint(0, 3))
            c = alg.rho(r.randint(-1, 2)) * c
        if (a * b) * c != a * (b * c):
            bad.append(f"{alg!r}: ({a})({b})({c})")
    return bad


def jacobi_failures(random_triples=50, seed=None):
    bad = []
    for alg in (U2, gl(2), gl(3)):
        gens = alg.gens()
        for a, b, c in itertools.combinations(gens, 3):
            if _jacobi(a, b, c):
                bad.append(f"{alg!r} generators {a}, {b}, {c}")
    r = randgen.rng(seed)
    for k in range(random_triples):
        alg = ALGEBRAS[k % len(ALGEBRAS)]
        a, b, c = (randgen.poly(r, alg, max_deg=2) for _ in range(3))
        if _jacobi(a, b, c):
            bad.append(f"{alg!r} random {a}, {b}, {c}")
    return bad


def _br(a, b):
    return a * b - b * a


def _jacobi(a, b, c):
    return not (_br(a, _br(b, c)) + _br(b, _br(c, a)) + _br(c, _br(a, b))).is_zero()

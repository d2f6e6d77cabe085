"""Seeded random elements for the property checks.

The seed comes from ``QPD_SEED`` when set.
"""

import os
import random
from fractions import Fraction

from qpd.ncalgebra import Algebra, NCPoly
from qpd.scalars import GaussRational

DEFAULT_SEED = 20240


def rng(seed=None) -> random.Random:
    if seed is None:
        seed = int(os.environ.get("QPD_SEED", DEFAULT_SEED))
    return random.Random(seed)


def coeff(r: random.Random, height: int = 10) -> GaussRational:
    re = Fraction(r.randint(-height, height), r.randint(1, 3))
    im = Fraction(r.randint(-height, height), r.randint(1, 3)) if r.random() < 0.5 else 0
    if re == 0 and im == 0:
        re = 1
    return GaussRational(re, im)


def word(r: random.Random, alg: Algebra, max_len: int = 4, min_len: int = 0):
    return tuple(r.randrange(alg.n) for _ in range(r.randint(min_len, max_len)))


def poly(r: random.Random, alg: Algebra, max_deg: int = 3, nterms: int = 3, height: int = 10) -> NCPoly:
    """Random element: a few PBW-ordered monomials with random coefficients and hb powers."""
    out = alg.zero()
    for _ in range(nterms):
        exps = [0] * alg.n
        for _ in range(r.randint(0, max_deg)):
            exps[r.randrange(alg.n)] += 1
        key = tuple(exps) + (0, r.randint(0, 1))
        out = out + NCPoly(alg, {key: coeff(r, height).triple})
    return out

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpd.scalars import HB, GaussRational, HbarScalar, PoleError, substitute_hbar

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gauss = st.builds(GaussRational, small, small)
nonzero_gauss = gauss.filter(lambda g: not g.is_zero())


@st.composite
def hbar_poly(draw, max_deg=3):
    cs = draw(st.lists(gauss, min_size=1, max_size=max_deg + 1))
    out = HbarScalar(0)
    for k, c in enumerate(cs):
        out = out + HbarScalar(c) * HB ** k
    return out


@st.composite
def hbar_scalar(draw):
    num = draw(hbar_poly())
    den = draw(hbar_poly().filter(lambda p: not p.is_zero()))
    return num / den


FIELDS = [
    pytest.param(gauss, nonzero_gauss, GaussRational(0), GaussRational(1), id="gauss"),
    pytest.param(hbar_scalar(), hbar_scalar().filter(lambda s: not s.is_zero()),
                 HbarScalar(0), HbarScalar(1), id="hbar"),
]


@pytest.mark.parametrize("elems,units,zero,one", FIELDS)
def test_field_axioms(elems, units, zero, one):
    @settings(max_examples=60, deadline=None)
    @given(elems, elems, elems, units)
    def run(a, b, c, u):
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + zero == a and a * one == a
        assert a + (-a) == zero
        assert a - b == a + (-b)
        assert u * u.inverse() == one
        assert (a / u) * u == a

    run()


def test_gauss_basics():
    i = GaussRational(0, 1)
    assert i * i == -1
    assert GaussRational(Fraction(2, 4), 0) == Fraction(1, 2)
    assert str(GaussRational(1, -2)) == "1 - 2*i"
    assert (GaussRational(3, 4) * GaussRational(3, -4)) == 25
    with pytest.raises(ZeroDivisionError):
        GaussRational(0).inverse()


def test_hbar_substitution_and_poles():
    s = (HB + 1) / (HB - 2)
    assert substitute_hbar(s, 0) == Fraction(-1, 2)
    assert substitute_hbar(s, 1) == -2
    with pytest.raises(PoleError):
        substitute_hbar(s, 2)
    assert HbarScalar(0).is_polynomial()
    assert not (1 / HB).is_polynomial()
    assert (1 / HB).laurent() == {-1: (1, 0, 1)}


def test_hbar_fraction_normalises():
    a = (HB ** 2 - 1) / (HB - 1)
    assert a == HB + 1
    assert hash(a) == hash(HB + 1)

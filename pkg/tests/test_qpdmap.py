import pytest

from qpd import qpdmap, randgen
from qpd.expr import normalize
from qpd.ncalgebra import U2, U2_EXT
from qpd.scalars import PoleError


@pytest.mark.parametrize("src,want", [
    ("dt0(t)", "1"),
    ("dt(t)", "-i*hb^-1*t + 1"),
    ("dx(x)", "1"),
    ("dx(x*y)", "y"),
    ("dy(x*y)", "x"),
    ("dz(x*y)", "i*hb"),
    ("dx(x^2)", "2*x"),
    ("dt0(x^2)", "-i*hb"),
    ("dt0(t*x)", "x"),
    ("dz(x*y - y*x)", "2*i*hb"),
    ("D11(x*y)", "x*y - i*hb^2"),
    ("H12(x)", "i*hb"),
    ("H21(x)", "-i*hb"),
])
def test_frozen_values(src, want):
    assert str(normalize(src)) == want


def test_generator_matrices():
    t, x, y, z = U2.gens()
    assert qpdmap.dmat2(x).to_strings() == [["x", "-hb"], ["-hb", "x"]]
    d = qpdmap.hatt4(t).to_strings()
    assert all(d[k][k] == "t + i*hb" for k in range(4))
    assert qpdmap.m_matrix().to_strings()[1] == ["-x", "0", "-z", "y"]


def test_unshift_relation():
    t, x, y, z = U2_EXT.gens()
    a = x * t + z * z
    assert qpdmap.unshift_t(qpdmap.extract_qpd("dt", a), a) == qpdmap.extract_qpd("dt0", a)


def test_routes_agree_on_random_polys():
    r = randgen.rng(3)
    samples = [randgen.poly(r, U2) for _ in range(20)]
    assert qpdmap.cross_validate_with_double(samples).passed
    assert all(v.is_zero() for v in qpdmap.consistency_2_vs_4(samples).values())
    for a in samples:
        for name in ("dt", "dx", "dy", "dz"):
            assert qpdmap.extract_qpd(name, a, via="dmat2") == qpdmap.extract_qpd(name, a)


def test_leibniz_table_and_quaternions():
    assert qpdmap.verify_leib_table(2).passed
    assert qpdmap.quaternion_table_check().passed


def test_wrong_leibniz_entry_fails():
    first = qpdmap.LEIB_TABLE[0]
    flipped = (first[0], first[1], -first[2], first[3])
    rep = qpdmap.verify_leib_table(2, table=(flipped,))
    assert not rep.passed


def test_homomorphism_on_pairs():
    r = randgen.rng(5)
    pairs = [(randgen.poly(r, U2), randgen.poly(r, U2)) for _ in range(10)]
    res = qpdmap.homomorphism_residuals(pairs)
    assert all(v.is_zero() for v in res.values())


def test_negative_rho_power_is_a_pole():
    with pytest.raises(PoleError):
        qpdmap.hatt4(U2_EXT.rho(-1))

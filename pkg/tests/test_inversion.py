import pytest

from qpd import inversion as inv
from qpd.errors import DegenerateAlphaError, SingularSystemError
from qpd.inversion import B_HAT, HB_HAT, RHO_HAT, AlphaVector, CommPoly
from qpd.report import is_zero_residual

ALPHAS = [AlphaVector.parse(s) for s in ("0,0,0,1", "0,1,0,0", "0,3/5,4/5,0")]
IDS = ["z", "x", "xy"]


def _zero(res):
    return is_zero_residual(res)


def test_alpha_parsing():
    a = AlphaVector.parse("1/2, 3/5,4/5,0")
    assert str(a) == "(1/2,3/5,4/5,0)"
    assert str(a.b()) == "1/2*t + 3/5*x + 4/5*y"
    assert not a.is_unit()  # a unit alpha has a0 = 0
    assert AlphaVector.parse("0,3/5,4/5,0").is_unit()
    with pytest.raises(ValueError):
        AlphaVector.parse("1,2,3")
    with pytest.raises(DegenerateAlphaError):
        AlphaVector.parse("1,0,0,0").require_nondegenerate()
    with pytest.raises(DegenerateAlphaError):
        AlphaVector.parse("0,1,1,0").require_unit()


def test_commpoly_ring():
    p = (RHO_HAT - B_HAT) ** 2
    assert p == RHO_HAT * RHO_HAT - B_HAT * RHO_HAT * 2 + B_HAT * B_HAT
    assert (p - p).is_zero()
    assert (HB_HAT * RHO_HAT + RHO_HAT).at_hbar_zero() == RHO_HAT


def test_d_prime_frozen():
    assert str(inv.d_prime()) == "rho^3 - 3*rho^2*b + 3*rho*b^2 - 4*rho*hb^2 - b^3 + 4*b*hb^2"
    want = (RHO_HAT - B_HAT) * ((RHO_HAT - B_HAT) ** 2 - HB_HAT * HB_HAT * 4)
    assert inv.d_prime() == want


def test_numerators_frozen():
    got = [str(n) for n in inv.displayed_numerators()]
    assert got == ["2*rho^2 - 6*rho*b + 2*b^2 - 2*hb^2", "-rho + 3*b", "3*rho - b", "-2"]


def test_system_and_cramer():
    assert _zero(inv.system_comparison())
    assert _zero(inv.cramer_residuals())
    wrong = list(inv.displayed_numerators())
    wrong[3] = wrong[3] + CommPoly.const(1)
    assert not _zero(inv.cramer_residuals(numerators=wrong))


def test_singular_system():
    zero = CommPoly.const(0)
    with pytest.raises(SingularSystemError):
        inv.cramer_solve(([[zero] * 4 for _ in range(4)], [zero] * 4))


def test_fraction_criterion():
    assert all(inv.fraction_criterion_sanity().values())


def test_inverse_b_frozen_denominator():
    a = AlphaVector.parse("1,0,0,1")
    assert str(inv.invert_dmat_b(a).denominator) == "b^2 + 2*i*b*hb - 2*hb^2"
    assert _zero(inv.inverse_b_residuals(a))


@pytest.mark.parametrize("alpha", ALPHAS, ids=IDS)
def test_ch_and_commutation(alpha):
    assert _zero(inv.ch_rho_residuals())
    assert inv.ch_b_residual(alpha).is_zero()
    assert inv.commute_residual(alpha).is_zero()
    assert _zero(inv.scalar_commutation_residuals(alpha))


@pytest.mark.parametrize("alpha", ALPHAS, ids=IDS)
def test_two_sided_inverse(alpha):
    res = inv.inverse_c_residuals(alpha)
    assert set(res) == {"D(c) num = d' I", "num_L D(c) = d' I", "d' num = num_L d'",
                        "D(c) = dmat2(rho - b)"}
    assert _zero(res)
    assert not _zero(inv.inverse_c_residuals(alpha, corrupt=1))


@pytest.mark.parametrize("alpha", ALPHAS, ids=IDS)
def test_gradients(alpha):
    assert _zero(inv.gradient_residuals(alpha))
    assert not _zero(inv.gradient_residuals(alpha, corrupt=1))
    assert _zero(inv.classical_gradient_residuals(alpha))


def test_cross_products():
    assert _zero(inv.cross_product_residuals())


def test_non_unit_alpha_rejected():
    with pytest.raises(DegenerateAlphaError):
        inv.inverse_c_report([AlphaVector.parse("0,1,1,0")])


def test_full_report():
    rep = inv.inversion_report()
    assert rep.passed, rep.summary()

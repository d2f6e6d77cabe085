import pytest

from qpd import central
from qpd.expr import normalize


@pytest.mark.parametrize("sign", [1, -1])
def test_full_report(sign):
    rep = central.central_report(sign)
    assert rep.passed, rep.summary()


def test_sign_audit_selects_plus_plus():
    audit = central.sign_choice_audit(1)
    winners = [k for k, v in audit.items() if all(v.values())]
    assert winners == [(1, 1)]


def test_hatt_mu_squared_closed_form():
    audit = central.hatt_mu_squared_audit()
    assert audit["hatt(-4(Cas+hb^2)) = (mu^2-12hb^2)I - 8i hb M"]
    # the variant with 4 hb^2 inside the Casimir term is not the image of mu^2
    assert not audit["hatt(-4(Cas+4hb^2)) = (mu^2-12hb^2)I - 8i hb M"]


@pytest.mark.parametrize("sign", [1, -1])
def test_mu_powers_cohere(sign):
    assert central.mu_power_coherence(sign) == {}


def test_mu_power_residual_is_not_vacuous():
    assert not central.hatt_mu_power(1).residual(central.hatt_mu_power(2)).is_zero()


def test_rho_derivatives():
    assert all(r.is_zero() for r in central.rho_derivative_residuals().values())
    assert str(normalize("dt0(rho)")) == "-i*hb*rho^-1"
    assert str(normalize("dx(rho)")) == "x*rho^-1"
    assert str(normalize("dt0(rho^2)")) == "-3*i*hb"
    assert str(normalize("lim(dx(rho))")) == "x*rho^-1"


def test_symmetric_functions():
    assert all(r.is_zero() for r in central.mu_symmetric_residuals(1).values())


def test_ideal_welldefined():
    assert all(r.is_zero() for r in central.ideal_welldef_residuals().values())

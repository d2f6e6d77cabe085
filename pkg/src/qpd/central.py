"""The central elements mu = mu1 - mu2 and rho = sqrt(Cas + hb^2).

``mu`` is never a separate symbol: it is ``2*i*s*rho`` with a sign ``s`` that
defaults to +1 (both signs verify).  With ``Cas = x^2 + y^2 + z^2`` and
``M = xA + yB + zC``::

    hatt(mu)  = ((mu^2 - 4 hb^2)/mu) I - (4 i hb/mu) M
    hatt(rho) = ((rho^2 + hb^2)/rho) I + (i hb/rho) M

Negative powers of mu need the central denominators ``(mu^2 + 4 hb^2)^k``;
they are returned as :class:`CentralFraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict

from qpd.ncalgebra import U2_EXT, NCPoly, gl, basis_change_gl2_to_u2
from qpd.qpdmap import (
    DerivMatrix,
    dmat2,
    dmat2_from_values,
    from_hatt4,
    hatt4,
    m_matrix,
    unshift_t,
)
from qpd.report import Report
from qpd.scalars import GaussRational, PoleError

I = GaussRational(0, 1)
ALG = U2_EXT


def gens():
    return ALG.gens()


def cas() -> NCPoly:
    t, x, y, z = gens()
    return x * x + y * y + z * z


def hb(k: int = 1) -> NCPoly:
    return ALG.hbar(k)


def ihb() -> NCPoly:
    return hb().scale(I)


def rho(k: int = 1) -> NCPoly:
    return ALG.rho(k)


def mu(sign: int = 1) -> NCPoly:
    return rho().scale(2 * sign * I)


def mu_inv(sign: int = 1) -> NCPoly:
    # 1/(2 i s rho) = -i s/2 rho^-1
    return rho(-1).scale(GaussRational(0, -sign) / 2)


def mu12(sign: int = 1):
    t = gens()[0]
    half = mu(sign).scale(GaussRational(1, 0) / 2)
    return t + ihb() + half, t + ihb() - half


# ---------------------------------------------------------------------------
# the characteristic polynomial of L
# ---------------------------------------------------------------------------

def l_matrix() -> DerivMatrix:
    t, x, y, z = gens()
    return DerivMatrix([[t - z.scale(I), -x.scale(I) - y], [-x.scale(I) + y, t + z.scale(I)]])


def charpoly_coeffs():
    """``(c1, c0)`` of p(tau) = tau^2 - c1 tau + c0."""
    t = gens()[0]
    h = hb().scale(2 * I)
    return t.scale(2) + h, t * t + cas() + (t * hb()).scale(2 * I)


def ch_identity_L() -> Report:
    rep = Report("CH identity of L")
    L = l_matrix()
    c1, c0 = charpoly_coeffs()

    def entries():
        a, b, c, d = (NCPoly(ALG, basis_change_gl2_to_u2(g).terms) for g in gl(2).gens())
        return DerivMatrix([[a, b], [c, d]]) - L

    rep.check("L = (t-iz, -ix-y; -ix+y, t+iz) is the gl(2) generating matrix", entries)
    rep.check("p(L) = L^2 - (2t+h) L + (t^2+Cas+2i hb t) I = 0",
              lambda: L * L - L * c1 + DerivMatrix.scalar(2, c0))

    def central():
        bad = {}
        for name, c in (("c1", c1), ("c0", c0)):
            for g in gens():
                r = c * g - g * c
                if not r.is_zero():
                    bad[(name, str(g))] = r
        return bad

    rep.check("coefficients of p are central", central)

    def classical():
        Lc = L.classical_limit()
        tr = Lc[0, 0] + Lc[1, 1]
        det = Lc[0, 0] * Lc[1, 1] - Lc[0, 1] * Lc[1, 0]  # commutative after the limit
        return [c1.classical_limit() - tr, c0.classical_limit() - det]

    rep.check("hb = 0: p is the classical characteristic polynomial", classical)
    return rep


def mu_symmetric_residuals(sign: int = 1) -> dict:
    m1, m2 = mu12(sign)
    t = gens()[0]
    c1, c0 = charpoly_coeffs()
    m = mu(sign)
    return {
        "mu1 + mu2 = 2t + 2i hb": m1 + m2 - t.scale(2) - ihb().scale(2),
        "mu1 mu2 = t^2 + Cas + 2i hb t": m1 * m2 - c0,
        "p(mu1) = 0": m1 * m1 - c1 * m1 + c0,
        "p(mu2) = 0": m2 * m2 - c1 * m2 + c0,
        "mu^2 = (mu1+mu2)^2 - 4 mu1 mu2": m * m - ((m1 + m2) * (m1 + m2) - (m1 * m2).scale(4)),
        "mu^2 = -4(Cas + hb^2)": m * m + (cas() + hb(2)).scale(4),
    }


# ---------------------------------------------------------------------------
# hatt on mu and its powers
# ---------------------------------------------------------------------------

def _I4(c) -> DerivMatrix:
    return DerivMatrix.scalar(4, c)


def hatt_mu_squared_closed(sign: int = 1) -> DerivMatrix:
    m = mu(sign)
    return _I4(m * m - hb(2).scale(12)) - m_matrix() * ihb().scale(8)


def hatt_mu_squared(sign: int = 1) -> DerivMatrix:
    """hatt(mu^2) from the generator images, via mu^2 = -4(Cas + hb^2)."""
    return hatt4(mu(sign) * mu(sign))


def hatt_mu_squared_audit() -> Dict[str, bool]:
    """Which readings of the displayed hatt(mu^2) chain hold."""
    closed = hatt_mu_squared_closed()
    c4 = (cas() + hb(2).scale(4)).scale(-4)
    return {
        "hatt(-4(Cas+hb^2)) = (mu^2-12hb^2)I - 8i hb M": (hatt4((cas() + hb(2)).scale(-4)) - closed).is_zero(),
        "hatt(-4(Cas+4hb^2)) = (mu^2-12hb^2)I - 8i hb M": (hatt4(c4) - closed).is_zero(),
        "-4(Cas+4hb^2) I - 8i hb M = (mu^2-12hb^2)I - 8i hb M": (_I4(c4) - m_matrix() * ihb().scale(8) - closed).is_zero(),
    }


def hatt_mu(sign: int = 1) -> DerivMatrix:
    m = mu(sign)
    inv = mu_inv(sign)
    return _I4((m * m - hb(2).scale(4)) * inv) - m_matrix() * (ihb().scale(4) * inv)


def spectral_candidate(e1: int, e2: int, sign: int = 1) -> DerivMatrix:
    """hatt(mu) from the spectral decomposition of hatt(mu^2) with root signs e1, e2."""
    m = mu(sign)
    two_ih = ihb().scale(2)
    nu1 = (m - two_ih) * (m - two_ih)
    nu2 = (m + two_ih) * (m + two_ih)
    # nu1 - nu2 = -8 i hb mu, a unit
    inv_diff = (ihb().scale(-8) * m).unit_inverse()
    H2 = hatt_mu_squared_closed(sign)
    r1 = (m - two_ih).scale(e1)
    r2 = (m + two_ih).scale(e2)
    return (H2 - _I4(nu2)) * (inv_diff * r1) - (H2 - _I4(nu1)) * (inv_diff * r2)


def derivatives_from_hatt(H: DerivMatrix, a: NCPoly) -> Dict[str, NCPoly]:
    """Unshifted derivatives ``dt0, dx, dy, dz`` of a from its 4x4 matrix."""
    v = from_hatt4(H)
    return {"dt0": unshift_t(v["dt"], a), "dx": v["dx"], "dy": v["dy"], "dz": v["dz"]}


def _classical_limits_hold(H: DerivMatrix, sign: int = 1) -> Dict[str, bool]:
    """The limits dt mu -> 0 and dx mu -> -4x/mu; a pole counts as failure."""
    m = mu(sign)
    x = gens()[1]
    out = {}
    try:
        v = derivatives_from_hatt(H, m)
    except PoleError:
        return {"dt mu -> 0": False, "dx mu -> -4x/mu": False}
    for key, target, name in (("dt0", ALG.zero(), "dt mu -> 0"),
                              ("dx", x.scale(-4) * mu_inv(sign), "dx mu -> -4x/mu")):
        try:
            out[name] = (v[key].classical_limit() - target.classical_limit()).is_zero()
        except PoleError:
            out[name] = False
    return out


def sign_choice_audit(sign: int = 1) -> Dict[tuple, Dict[str, bool]]:
    return {(e1, e2): _classical_limits_hold(spectral_candidate(e1, e2, sign), sign)
            for e1 in (1, -1) for e2 in (1, -1)}


def sign_choice_report(sign: int = 1) -> Report:
    rep = Report("sign choice")
    audit = sign_choice_audit(sign)
    passing = sorted(k for k, v in audit.items() if all(v.values()))
    rep.check("only (e1, e2) = (1, 1) has both classical limits", lambda: passing == [(1, 1)])
    rep.check("the (1, 1) candidate is the closed form", lambda: spectral_candidate(1, 1, sign) - hatt_mu(sign))
    return rep


@dataclass
class CentralFraction:
    """``num * den^-1`` with ``den`` central (a polynomial in rho, hb)."""

    num: DerivMatrix
    den: NCPoly

    def __mul__(self, other: "CentralFraction") -> "CentralFraction":
        return CentralFraction(self.num * other.num, self.den * other.den)

    def residual(self, other: "CentralFraction") -> DerivMatrix:
        """Zero iff the two fractions are equal (cross-multiplied)."""
        return self.num * other.den - other.num * self.den

    @classmethod
    def of(cls, m: DerivMatrix) -> "CentralFraction":
        return cls(m, ALG.one())


def hatt_mu_power(p: int, sign: int = 1) -> CentralFraction:
    """hatt(mu^p) for any integer p; den = (mu^2 + 4hb^2)^k for p = -k < 0."""
    m = mu(sign)
    inv = mu_inv(sign)
    two_ih = ihb().scale(2)
    plus, minus = m + two_ih, m - two_ih
    k = max(0, -p)
    den = (m * m + hb(2).scale(4)) ** k

    def cleared(base, other, e):
        # base^e * den as a polynomial: base^(e+k) * other^k
        return base ** (e + k) * other ** k

    half_inv = inv.scale(GaussRational(1, 0) / 2)
    cI = (cleared(plus, minus, p + 1) + cleared(minus, plus, p + 1)) * half_inv
    cM = (cleared(minus, plus, p) - cleared(plus, minus, p)) * inv
    return CentralFraction(_I4(cI) + m_matrix() * cM, den)


def mu_power_coherence(sign: int = 1, rng_p=range(-2, 4)) -> dict:
    bad = {}
    Hmu = hatt_mu(sign)
    for p in rng_p:
        for q in rng_p:
            r = (hatt_mu_power(p, sign) * hatt_mu_power(q, sign)).residual(hatt_mu_power(p + q, sign))
            if not r.is_zero():
                bad[("p+q", p, q)] = r
    for p in range(0, 4):
        r = hatt_mu_power(p, sign).residual(CentralFraction.of(Hmu ** p))
        if not r.is_zero():
            bad[("power", p)] = r
    r = hatt_mu_power(2, sign).residual(CentralFraction.of(hatt_mu_squared(sign)))
    if not r.is_zero():
        bad["p=2 vs hatt(mu^2)"] = r
    inv = hatt_mu_power(-1, sign)
    r = inv.num * Hmu - DerivMatrix.scalar(4, inv.den)
    if not r.is_zero():
        bad["hatt(mu^-1) hatt(mu) = I"] = r
    return bad


def hatt_mu12(sign: int = 1):
    t = gens()[0]
    base = _I4(t + ihb().scale(2))
    half = hatt_mu(sign) * ALG.const(GaussRational(1, 0) / 2)
    return base + half, base - half


def hatt_mu12_audit(sign: int = 1) -> Dict[str, NCPoly]:
    """Residuals for the displayed hatt(mu1), hatt(mu2) and derived derivatives."""
    t, x, y, z = gens()
    m = mu(sign)
    inv = mu_inv(sign)
    two_ih = ihb().scale(2)
    H1, H2 = hatt_mu12(sign)
    M = m_matrix()
    disp1 = _I4(t + (m + two_ih) * (m + two_ih) * inv.scale(GaussRational(1, 0) / 2)) - M * (two_ih * inv)
    disp1_literal = _I4(t + (m * m + two_ih) * (m * m + two_ih) * inv.scale(GaussRational(1, 0) / 2)) - M * (two_ih * inv)
    disp2 = _I4(t - (m - two_ih) * (m - two_ih) * inv.scale(GaussRational(1, 0) / 2)) + M * (two_ih * inv)
    v1 = from_hatt4(H1)
    return {
        "hatt(mu1) + hatt(mu2) = (2t + 4i hb) I": H1 + H2 - _I4(t.scale(2) + ihb().scale(4)),
        "hatt(mu1) - hatt(mu2) = hatt(mu)": H1 - H2 - hatt_mu(sign),
        "hatt(mu1) = (t + (mu+2i hb)^2/(2mu)) I - (2i hb/mu) M": H1 - disp1,
        "hatt(mu2) = (t - (mu-2i hb)^2/(2mu)) I + (2i hb/mu) M": H2 - disp2,
        "dt^(mu1) = -(i/hb)(t + (mu+2i hb)^2/(2mu))":
            v1["dt"] + (t + (m + two_ih) * (m + two_ih) * inv.scale(GaussRational(1, 0) / 2)) * hb(-1).scale(I),
        "dx(mu1) = -2x/mu": v1["dx"] + x.scale(2) * inv,
        "literal display with (mu^2 + 2i hb)^2": H1 - disp1_literal,
    }


# ---------------------------------------------------------------------------
# the quantum radius
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def hatt_rho() -> DerivMatrix:
    r = rho()
    inv = rho(-1)
    return _I4((r * r + hb(2)) * inv) + m_matrix() * (ihb() * inv)


@lru_cache(maxsize=None)
def dmat_rho() -> DerivMatrix:
    t, x, y, z = gens()
    r2 = rho(2) + hb(2)
    inv = rho(-1)
    h = hb()
    e = [[r2 - h * z, -(h * (x + y.scale(I)))], [-(h * (x - y.scale(I))), r2 + h * z]]
    return DerivMatrix([[v * inv for v in row] for row in e])


def rho_derivative_residuals() -> Dict[str, NCPoly]:
    t, x, y, z = gens()
    inv = rho(-1)
    v = derivatives_from_hatt(hatt_rho(), rho())
    return {
        "dt rho = -i hb/rho": v["dt0"] + ihb() * inv,
        "dx rho = x/rho": v["dx"] - x * inv,
        "dy rho = y/rho": v["dy"] - y * inv,
        "dz rho = z/rho": v["dz"] - z * inv,
    }


def rho_classical_residuals() -> Dict[str, NCPoly]:
    t, x, y, z = gens()
    inv = rho(-1)
    v = derivatives_from_hatt(hatt_rho(), rho())
    return {
        "dt r -> 0": v["dt0"].classical_limit(),
        "dx r -> x/r": (v["dx"] - x * inv).classical_limit(),
        "dy r -> y/r": (v["dy"] - y * inv).classical_limit(),
        "dz r -> z/r": (v["dz"] - z * inv).classical_limit(),
    }


def ideal_welldef_residuals() -> Dict[str, DerivMatrix]:
    t, x, y, z = gens()
    Hr = hatt_rho()
    gen_c = cas() + hb(2)
    out = {
        "hatt(Cas + hb^2) = hatt(rho)^2": hatt4(gen_c) - Hr * Hr,
        "hatt((Cas + hb^2) x) = hatt(rho)^2 hatt(x)": hatt4(gen_c * x) - Hr * Hr * hatt4(x),
        "D(Cas + hb^2) = D(rho)^2": dmat2(gen_c) - dmat_rho() * dmat_rho(),
        "D(rho) from the 4x4 derivatives": dmat_rho() - dmat2_from_values(from_hatt4(Hr)),
        "hb = 0: hatt(rho) = rho I": Hr.classical_limit() - _I4(rho()).classical_limit(),
    }
    for s in (1, -1):
        out[f"hatt(rho) = hatt(mu)/(2i s), s={s:+d}"] = Hr - hatt_mu(s) * ALG.const(GaussRational(0, -s) / 2)
    return out


def centrality_residuals(sign: int = 1) -> dict:
    bad = {}
    Hm, Hr = hatt_mu(sign), hatt_rho()
    for g in gens():
        Hg = hatt4(g)
        for name, H in (("mu", Hm), ("rho", Hr)):
            r = H * Hg - Hg * H
            if not r.is_zero():
                bad[(name, str(g))] = r
        r = rho() * g - g * rho()
        if not r.is_zero():
            bad[("rho g - g rho", str(g))] = r
    return bad


def central_report(sign: int = 1) -> Report:
    rep = Report("central extension")
    rep.extend(ch_identity_L())
    for k, v in mu_symmetric_residuals(sign).items():
        rep.check(k, lambda v=v: v)
    rep.check("hatt(mu^2): generator route = (mu^2-12hb^2)I - 8i hb M",
              lambda: hatt_mu_squared(sign) - hatt_mu_squared_closed(sign))
    rep.check("tr hatt(mu^2) = 4(mu^2 - 12 hb^2), tr M = 0",
              lambda: [hatt_mu_squared(sign).trace() - (mu(sign) * mu(sign) - hb(2).scale(12)).scale(4),
                       m_matrix().trace()])
    rep.check("hatt(mu)^2 = hatt(mu^2)", lambda: hatt_mu(sign) * hatt_mu(sign) - hatt_mu_squared(sign))
    rep.extend(sign_choice_report(sign))
    rep.check("hatt(mu)-limits: dt mu -> 0, dx mu -> -4x/mu",
              lambda: all(_classical_limits_hold(hatt_mu(sign), sign).values()))
    rep.check("hatt(mu^p) coherence for p, q in -2..3", lambda: mu_power_coherence(sign))
    audit = hatt_mu12_audit(sign)
    for k in list(audit)[:-1]:
        rep.check(k, lambda k=k: audit[k])
    for k, v in rho_derivative_residuals().items():
        rep.check(k, lambda v=v: v)
    rep.check("classical limits of the rho derivatives", rho_classical_residuals)
    rep.check("hatt(rho)^2 = hatt(Cas + hb^2), hatt well defined on the quotient", ideal_welldef_residuals)
    rep.check("hatt(mu), hatt(rho) commute with hatt of the generators", lambda: centrality_residuals(sign))
    return rep

import pytest

from qpbcalc.braidext import (
    GradedBalancedTensor,
    UnsupportedDegreeError,
    chi_bullet,
    chi_bullet_inv,
    collapse_pair,
    d_otimes_b,
    graded_identity_suite,
    raw_pair,
    sigma_bullet,
    sigma_bullet_inv,
    sigma_squared_is_identity,
    tau_bullet,
    wedge_otimes_b,
)
from qpbcalc.calculus import Element, GradedTensor
from qpbcalc.examples import build_example
from qpbcalc.ncalg import NCPoly
from qpbcalc.scalars import Scalar

q = Scalar.param("q")
qi = Scalar.param("q", -1)
L = Scalar.param("L")
Li = Scalar.param("L", -1)
one = Scalar.one()


@pytest.fixture(scope="module")
def torus():
    return build_example("torus")


@pytest.fixture(scope="module")
def podles():
    return build_example("podles")


@pytest.fixture(scope="module")
def t2():
    return build_example("classical_t2")


def balanced(cc, raw):
    return GradedBalancedTensor(cc, raw=raw)


# -- extended translation map ---------------------------------------------------

def test_tau_restricts_to_degree_zero(torus):
    cc = torus.cc
    oh, oa = cc.omega_H, cc.omega_A
    got = tau_bullet(cc, oh.of_poly(NCPoly.gen("t")))
    want = raw_pair(cc, oa.of_poly(NCPoly.gen("ui")),
                    oa.of_poly(NCPoly.gen("u")))
    assert got == want


def test_tau_one_form_torus(torus):
    # tau(dt) = d(u^-1) (x) u + u^-1 (x) du
    cc = torus.cc
    oh, oa = cc.omega_H, cc.omega_A
    got = tau_bullet(cc, oh.form("dt"))
    want = (GradedTensor.of((oa, oa), oa.d_poly(NCPoly.gen("ui")),
                            oa.of_poly(NCPoly.gen("u")))
            + GradedTensor.of((oa, oa), oa.of_poly(NCPoly.gen("ui")),
                              oa.d_poly(NCPoly.gen("u"))))
    assert got == want


def test_tau_vertical_form_podles(podles):
    # tau(t^-1 dt) = 1 (x) e0 - e0 (x) 1
    cc = podles.cc
    oh, oa = cc.omega_H, cc.omega_A
    theta = oh.of_poly(NCPoly.gen("ti"), ("dt",))
    got = tau_bullet(cc, theta)
    want = (GradedTensor.of((oa, oa), oa.unit(), oa.form("e0"))
            - GradedTensor.of((oa, oa), oa.form("e0"), oa.unit()))
    assert balanced(cc, got) == balanced(cc, want)


def test_tau_degree_two(t2):
    # chi(tau(dt^ds)) = 1 (x) dt^ds exercises the two-form scheme
    cc = t2.cc
    oh = cc.omega_H
    theta = oh.form("dt", "ds")
    got = chi_bullet(cc, tau_bullet(cc, theta))
    want = GradedTensor.of((cc.omega_A, oh), cc.omega_A.unit(), theta)
    assert got == want


def test_tau_rejects_high_degree(podles):
    cc = podles.cc
    fake = Element(cc.omega_H, {((), ("dt", "dt", "dt", "dt")): one})
    with pytest.raises(UnsupportedDegreeError):
        tau_bullet(cc, fake)


# -- canonical map ---------------------------------------------------------------

def test_chi_bullet_values(torus):
    cc = torus.cc
    oa, oh = cc.omega_A, cc.omega_H
    got = chi_bullet(cc, raw_pair(cc, oa.unit(), oa.form("du")))
    assert got == cc.delta_bullet(oa.form("du"))
    got2 = chi_bullet(cc, raw_pair(cc, oa.unit(), oa.unit()))
    assert got2 == GradedTensor.unit((oa, oh))


def test_chi_bullet_inv_is_tau(podles):
    cc = podles.cc
    oa, oh = cc.omega_A, cc.omega_H
    theta = oh.of_poly(NCPoly.gen("ti"), ("dt",))
    via_inv = chi_bullet_inv(cc, GradedTensor.of((oa, oh), oa.unit(), theta))
    assert via_inv == balanced(cc, tau_bullet(cc, theta))


def test_chi_roundtrip_degree3(podles):
    cc = podles.cc
    oa, oh = cc.omega_A, cc.omega_H
    for F in (("ep",), ("ep", "em"), ("ep", "em", "e0")):
        raw = raw_pair(cc, oa.unit(), oa.form(*F))
        back = chi_bullet_inv(cc, chi_bullet(cc, raw))
        assert back == balanced(cc, raw), F


# -- extended braiding -----------------------------------------------------------

def test_sigma_bullet_torus_value(torus):
    cc = torus.cc
    oa = cc.omega_A
    got = sigma_bullet(cc, raw_pair(cc, oa.form("du"), oa.form("dv")))
    want = raw_pair(cc, oa.form("dv"), oa.form("du")).scale(-Li)
    assert balanced(cc, got) == balanced(cc, want)


def test_sigma_bullet_podles_values(podles):
    cc = podles.cc
    oa = cc.omega_A
    got = sigma_bullet(cc, raw_pair(cc, oa.form("ep"), oa.form("em")))
    want = raw_pair(cc, oa.form("em"), oa.form("ep")).scale(-(qi * qi))
    assert balanced(cc, got) == balanced(cc, want)
    got2 = sigma_bullet(cc, raw_pair(cc, oa.form("e0"), oa.form("ep")))
    want2 = (raw_pair(cc, oa.form("ep"), oa.form("e0")).scale(-one)
             + raw_pair(cc, oa.form("e0", "ep"), oa.unit()).scale(
                 one - qi ** 4))
    assert balanced(cc, got2) == balanced(cc, want2)


def test_braided_commutativity_graded(torus):
    cc = torus.cc
    oa = cc.omega_A
    for f1 in ("du", "dv"):
        for f2 in ("du", "dv"):
            pair = raw_pair(cc, oa.form(f1), oa.form(f2))
            assert collapse_pair(cc, sigma_bullet(cc, pair)) == \
                collapse_pair(cc, pair)


def test_sigma_squared_dichotomy(torus, podles):
    cc = torus.cc
    oa = cc.omega_A
    items = [oa.of_poly(NCPoly.gen(g.name)) for g in cc.ca.A.generators]
    items += [oa.form("du"), oa.form("dv"), oa.form("du", "dv")]
    for x in items:
        for y in items:
            degs = (max(x.degrees() or {0}), max(y.degrees() or {0}))
            if sum(degs) > 2:
                continue
            assert sigma_squared_is_identity(cc, x, y), (x, y)
    cc2 = podles.cc
    oa2 = cc2.omega_A
    assert not sigma_squared_is_identity(cc2, oa2.form("e0"), oa2.form("ep"))


def test_sigma_inverse_graded(podles):
    cc = podles.cc
    oa = cc.omega_A
    for f1 in ("ep", "e0"):
        for f2 in ("em", "e0"):
            pair = raw_pair(cc, oa.form(f1), oa.form(f2))
            back = sigma_bullet_inv(cc, sigma_bullet(cc, pair))
            fwd = sigma_bullet(cc, sigma_bullet_inv(cc, pair))
            assert balanced(cc, back) == balanced(cc, pair)
            assert balanced(cc, fwd) == balanced(cc, pair)


# -- calculus on the balanced square -----------------------------------------------

def test_wedge_otimes_b_unit(torus):
    cc = torus.cc
    oa = cc.omega_A
    x = raw_pair(cc, oa.form("du"), oa.of_poly(NCPoly.gen("v")))
    unit = raw_pair(cc, oa.unit(), oa.unit())
    assert balanced(cc, wedge_otimes_b(cc, unit, x)) == balanced(cc, x)
    assert balanced(cc, wedge_otimes_b(cc, x, unit)) == balanced(cc, x)


def test_d_otimes_b_translation(torus):
    # d(tau(t)) = d(u^-1) (x) u + u^-1 (x) du
    cc = torus.cc
    oa = cc.omega_A
    got = d_otimes_b(cc, raw_pair(cc, oa.of_poly(NCPoly.gen("ui")),
                                  oa.of_poly(NCPoly.gen("u"))))
    want = tau_bullet(cc, cc.omega_H.form("dt"))
    assert balanced(cc, got) == balanced(cc, want)


def test_d_otimes_b_squares_to_zero(torus):
    cc = torus.cc
    oa = cc.omega_A
    for x in (raw_pair(cc, oa.of_poly(NCPoly.gen("u")),
                       oa.of_poly(NCPoly.gen("v"))),
              raw_pair(cc, oa.form("du"), oa.of_poly(NCPoly.gen("vi")))):
        got = d_otimes_b(cc, d_otimes_b(cc, x))
        assert balanced(cc, got) == balanced(
            cc, GradedTensor.zero((oa, oa)))


def test_chi_intertwines_products(torus):
    # chi(x wedge_B y) = chi(x) wedge chi(y) in the tensor-product calculus
    cc = torus.cc
    oa = cc.omega_A
    x = raw_pair(cc, oa.of_poly(NCPoly.gen("u")), oa.form("du"))
    y = raw_pair(cc, oa.of_poly(NCPoly.gen("v")), oa.form("dv"))
    lhs = chi_bullet(cc, wedge_otimes_b(cc, x, y))
    rhs = chi_bullet(cc, x).wedge(chi_bullet(cc, y))
    assert lhs == rhs


def test_chi_intertwines_differential(torus):
    cc = torus.cc
    oa = cc.omega_A
    x = raw_pair(cc, oa.of_poly(NCPoly.gen("ui")),
                 oa.of_poly(NCPoly.gen("u")))
    lhs = chi_bullet(cc, d_otimes_b(cc, x))
    rhs = chi_bullet(cc, x).d()
    assert lhs == rhs


def test_volume_squared_vanishes(torus):
    cc = torus.cc
    oa = cc.omega_A
    vol = oa.form("du", "dv")
    x = raw_pair(cc, vol, vol)
    assert balanced(cc, x) == balanced(cc, GradedTensor.zero((oa, oa)))


# -- the full graded suite ----------------------------------------------------------

def test_graded_suite_torus(torus):
    rep = graded_identity_suite(torus.cc, 3, "torus")
    assert rep.ok(), [w.input for w in rep.witnesses[:4]]


def test_graded_suite_podles(podles):
    rep = graded_identity_suite(podles.cc, 3, "podles")
    assert rep.ok(), [w.input for w in rep.witnesses[:4]]


def test_graded_suite_classical(t2):
    rep = graded_identity_suite(t2.cc, 3, "classical_t2")
    assert rep.ok(), [w.input for w in rep.witnesses[:4]]

"""Derivations, the induced operator, integrand conversion, heuristics."""

import random
from fractions import Fraction

import pytest

from redint.diffop import (apply_L, apply_derivation_rational, build_p,
                           build_tilde, heuristic_bounds, homogeneous_weights,
                           integrand_to_rhs, is_homogeneous)
from redint.poly import LaurentPoly, parse_poly, poly_to_str

from conftest import tpoly


def rand_ordinary(rng, n, deg=3, nterms=4):
    p = LaurentPoly.zero(n)
    for _ in range(nterms):
        exp = tuple(rng.randint(0, deg) for _ in range(n))
        p += LaurentPoly.monomial(n, exp, Fraction(rng.randint(-4, 4)))
    return p


# -- build_tilde ----------------------------------------------------------------

def test_tilde_tan(tan_field):
    deriv, _, _ = tan_field
    den, tilde = build_tilde(deriv)
    assert den == tpoly("1", 2)
    assert tilde == [tpoly("1", 2), tpoly("t2^2+1", 2)]


def test_tilde_cei(cei1):
    deriv, _, _, _ = cei1
    den, tilde = build_tilde(deriv)
    assert den == tpoly("t1*(1-t1^2)", 3)
    assert tilde[1] == tpoly("t3-(1-t1^2)*t2", 3)
    assert tilde[2] == tpoly("(1-t1^2)*(t3-t2)", 3)


def test_tilde_tanln(tanln_field):
    deriv, _, _ = tanln_field
    den, tilde = build_tilde(deriv)
    assert den == tpoly("t1", 3)
    assert tilde == [tpoly("t1", 3), tpoly("1", 3), tpoly("t3^2+1", 3)]


# -- build_p ----------------------------------------------------------------------

def test_p_tan(tan_field):
    _, op, _ = tan_field
    expected = parse_poly("x1*t1^-1 + (x2-2)*t2 + x2*t2^-1",
                          ["x1", "x2"], ["t1", "t2"])
    assert op.p == expected


def test_p_airy(airy):
    _, op, _, _ = airy
    expected = parse_poly("x1*t1^-1 + x2*t2^-1*t3 + x3*t1*t2*t3^-1",
                          ["x1", "x2", "x3"], ["t1", "t2", "t3"])
    assert op.p == expected


def test_p_tanln(tanln_field):
    _, op, _ = tanln_field
    expected = parse_poly("x1 + x2*t2^-1 + (x3-2)*t3 + x3*t3^-1",
                          ["x1", "x2", "x3"], ["t1", "t2", "t3"])
    assert op.p == expected


def test_p_cei(cei1):
    _, op, _, _ = cei1
    expected = parse_poly(
        "(x1-x2+x3)*(1-t1^2) + x3*t1^2*t2*t3^-1 + x2*t2^-1*t3 - x3*t2*t3^-1",
        ["x1", "x2", "x3"], ["t1", "t2", "t3"])
    assert op.p == expected


def test_build_p_rejects_zero_v(tan_field):
    deriv, _, _ = tan_field
    with pytest.raises(ValueError):
        build_p(deriv, LaurentPoly.zero(2))


# -- apply_L ------------------------------------------------------------------------

def test_apply_L_tan_t1(tan_field):
    _, op, _ = tan_field
    assert apply_L(op, tpoly("t1", 2)) == tpoly("1 - 2*t1*t2", 2)


def test_apply_L_airy_example(airy):
    _, op, _, _ = airy
    assert apply_L(op, tpoly("t2*t3", 3)) == tpoly("t3^2 + t1*t2^2", 3)


def test_apply_L_zero_and_kernel(tan_field):
    _, op, _ = tan_field
    assert apply_L(op, LaurentPoly.zero(2)).is_zero()
    assert apply_L(op, tpoly("t2^2+1", 2)).is_zero()


def test_apply_L_linearity(tan_field):
    _, op, _ = tan_field
    rng = random.Random(3)
    for _ in range(20):
        u1 = rand_ordinary(rng, 2)
        u2 = rand_ordinary(rng, 2)
        a = Fraction(rng.randint(-3, 3))
        assert apply_L(op, u1 * a + u2) == apply_L(op, u1) * a + apply_L(op, u2)


def test_apply_L_matches_derivation(tan_field):
    deriv, op, _ = tan_field
    v = tpoly("t2^2+1", 2)
    rng = random.Random(5)
    for _ in range(20):
        u = rand_ordinary(rng, 2)
        lu = apply_L(op, u)
        dn, dd = apply_derivation_rational(deriv, u, v)
        # L(u) = v * d(u/v) as rational functions
        assert lu * dd == dn * v


def test_apply_L_kernel_all_fields(tanln_field, cei1):
    for _, op, *_ in (tanln_field, cei1):
        assert apply_L(op, op.v).is_zero()


# -- rational derivatives ---------------------------------------------------------------

def test_derivative_eq1(tan_field):
    deriv, _, _ = tan_field
    num = tpoly("t1^2*t2^2+2*t1*t2+t1^2+1", 2)
    den = tpoly("4*t2^2+4", 2)
    dn, dd = apply_derivation_rational(deriv, num, den)
    assert dn == tpoly("t1", 2)
    assert dd == tpoly("t2^2+1", 2)


def test_derivative_of_constant(tan_field):
    deriv, _, _ = tan_field
    dn, dd = apply_derivation_rational(deriv, tpoly("5", 2), tpoly("1", 2))
    assert dn.is_zero() and dd == tpoly("1", 2)


def test_derivative_eq2(airy):
    deriv, _, _, _ = airy
    g = tpoly("1/3*t1*t3^2 + 2/3*t2*t3 - 1/3*t1^2*t2^2", 3)
    dn, dd = apply_derivation_rational(deriv, g, tpoly("1", 3))
    assert dn == tpoly("t3^2", 3) and dd == tpoly("1", 3)


# -- integrand conversion -----------------------------------------------------------------

def test_rhs_tan(tan_field):
    _, op, _ = tan_field
    rhs = integrand_to_rhs(op, tpoly("t1", 2), tpoly("t2^2+1", 2))
    assert rhs == tpoly("t1", 2)


def test_rhs_identity_for_v_one(airy):
    _, op, _, _ = airy
    assert integrand_to_rhs(op, tpoly("t3^2", 3), tpoly("1", 3)) == tpoly("t3^2", 3)


def test_rhs_insufficient_denominator(tan_field):
    deriv, _, _ = tan_field
    op1 = build_p(deriv, tpoly("1", 2))
    with pytest.raises(ValueError, match="insufficient"):
        integrand_to_rhs(op1, tpoly("t1", 2), tpoly("t2^2+1", 2))


def test_rhs_round_trip_through_solver(tan_field, tan_complete):
    deriv, op, _ = tan_field
    from redint.engine import normal_form, verify_integral
    rhs = integrand_to_rhs(op, tpoly("t1", 2), tpoly("t2^2+1", 2))
    nf = normal_form(rhs, tan_complete)
    assert nf.remainder.is_zero()
    assert verify_integral(deriv, nf.preimage, op.v,
                           tpoly("t1", 2), tpoly("t2^2+1", 2))


# -- heuristic bounds -------------------------------------------------------------------------

def test_heuristics_airy_all_violated(airy):
    deriv, _, _, _ = airy
    hb = heuristic_bounds(tpoly("t3^2", 3), tpoly("1", 3), tpoly("1", 3), deriv)
    u = tpoly("-1/3*t1^2*t2^2 + 1/3*t1*t3^2 + 2/3*t2*t3", 3)
    assert set(hb.violated_by(u)) == {"partial_elementary", "total_bronstein",
                                      "total_pmint", "partial_parrisch"}
    assert hb.total_bronstein == 3


def test_heuristics_tan_split(tan_field):
    deriv, _, _ = tan_field
    hb = heuristic_bounds(tpoly("t1", 2), tpoly("t2^2+1", 2),
                          tpoly("t2^2+1", 2), deriv)
    u = tpoly("1/4*t1^2*t2^2+1/2*t1*t2+1/4*t1^2+1/4", 2)
    assert set(hb.violated_by(u)) == {"total_bronstein", "total_pmint"}


# -- homogeneity ---------------------------------------------------------------------------------

def test_homogeneous_weights_airy(airy):
    _, op, _, _ = airy
    basis = homogeneous_weights(op.p)
    assert len(basis) == 1
    w = basis[0]
    scale = w[1]
    assert scale != 0
    assert tuple(x / scale for x in w) == (0, 1, 1)


def test_homogeneous_weights_tan_trivial(tan_field):
    _, op, _ = tan_field
    assert homogeneous_weights(op.p) == []


def test_homogeneous_weights_single_monomial():
    p = LaurentPoly.monomial(3, (2, -1, 5))
    assert len(homogeneous_weights(p)) == 3


def test_homogeneity_degree_shift(airy):
    """For w making p homogeneous, deg_w(L(u)) = deg_w(u) + deg_w(p) on
    w-homogeneous u with nonzero image."""
    _, op, _, _ = airy
    w = (0, 1, 1)
    d = op.p.weighted_degree(w)
    rng = random.Random(9)
    for _ in range(25):
        deg = rng.randint(1, 4)
        u = LaurentPoly.zero(3)
        for _ in range(3):
            a = rng.randint(0, 3)
            b = rng.randint(0, deg)
            u += LaurentPoly.monomial(3, (a, b, deg - b), rng.randint(-3, 3))
        if u.is_zero():
            continue
        assert is_homogeneous(u, w)
        image = apply_L(op, u)
        if not image.is_zero():
            assert image.weighted_degree(w) == u.weighted_degree(w) + d

"""Conditional identities, rule generation, reductions, critical pairs."""

import itertools
import random
from fractions import Fraction

import pytest

from redint.conditions import (TRUE, atom, cond_and, cond_eval, cond_sat,
                               cond_to_sexpr)
from redint.diffop import apply_L
from redint.poly import LaurentPoly, ParamPoly, leading_data, parse_poly
from redint.rules import (ConditionalIdentity, basic_rules, ci_reducible,
                          ci_to_rules, critical_pair, offset_of, reduce_ci,
                          reduce_poly_step, validate_rule)

from conftest import tpoly, xtpoly


def same_condition(b1, b2, n, box=10):
    return all(cond_eval(b1, alpha) == cond_eval(b2, alpha)
               for alpha in itertools.product(range(box + 1), repeat=n))


# -- basic rules from Algorithm 1 --------------------------------------------------

def test_tan_basic_rules(tan_basic):
    rules = tan_basic.rules
    assert len(rules) == 2
    r1, r2 = rules
    assert r1.P == xtpoly("(x2-3) + (x2-1)*t2^-2 + x1*t1^-1*t2^-1", 2)
    assert r1.Q == tpoly("t2^-1", 2)
    x2 = ParamPoly.variable(2, 1)
    assert same_condition(r1.B, cond_and(atom(x2 - 1, ">=0"),
                                         atom(x2 - 3, "!=0")), 2)
    assert r2.P == xtpoly("(x2+1) + x1*t1^-1*t2", 2)
    assert r2.Q == tpoly("t2", 2)
    assert same_condition(r2.B, atom(x2 - 1, "=0"), 2)


def test_airy_basic_rules(airy):
    _, op, order, _ = airy
    rules = basic_rules(op, order).rules
    assert len(rules) == 3
    assert rules[0].P == xtpoly(
        "(x2+1) + (x3-1)*t1*t2^2*t3^-2 + x1*t1^-1*t2*t3^-1", 3)
    assert rules[0].Q == tpoly("t2*t3^-1", 3)
    assert rules[1].P == xtpoly("(x1-1)*t1^-2*t2^-1*t3 + (x3+1)", 3)
    assert rules[1].Q == tpoly("t1^-1*t2^-1*t3", 3)
    assert rules[2].P == xtpoly("x1+1", 3)
    assert rules[2].Q == tpoly("t1", 3)


def test_tanln_basic_rules(tanln_basic):
    rules = tanln_basic.rules
    assert len(rules) == 4
    assert rules[0].P == xtpoly(
        "(x3-3) + x1*t3^-1 + x2*t2^-1*t3^-1 + (x3-1)*t3^-2", 3)
    assert rules[0].Q == tpoly("t3^-1", 3)
    assert rules[1].P == xtpoly("x1 + x2*t2^-1 + x3*t3^-1", 3)
    assert rules[1].Q == tpoly("1", 3)
    assert rules[2].P == xtpoly("(x2+1) + x3*t2*t3^-1", 3)
    assert rules[2].Q == tpoly("t2", 3)
    assert rules[3].P == xtpoly("x3+1", 3)
    assert rules[3].Q == tpoly("t3", 3)


def test_basic_rules_are_monomial_exact_offset(tan_basic, tanln_basic, airy):
    _, op, order, _ = airy
    systems = [tan_basic, tanln_basic, basic_rules(op, order)]
    for system in systems:
        offsets = set()
        for r in system.rules:
            assert r.Q.is_monomial()
            (exp, coeff), = r.Q.terms.items()
            assert coeff == ParamPoly.const(r.nvars, 1)
            assert r.exact_offset
            offsets.add(r.offset)
        assert len(offsets) == len(system.rules)


def test_algorithm1_cover_property(tan_field, tan_basic):
    """Every conforming alpha with p(alpha,t) != 0 is covered by exactly one
    output rule at gamma = alpha + lm exponent."""
    _, op, order = tan_field
    rules = tan_basic.rules
    for alpha in itertools.product(range(7), repeat=2):
        inst = op.p.substitute_x(alpha)
        if inst.is_zero():
            continue
        lm = leading_data(inst, order).lm
        gamma = tuple(a + b for a, b in zip(alpha, lm))
        hits = []
        for r in rules:
            if any(g < 0 for g in gamma) or not cond_eval(r.B, gamma):
                continue
            if (r.P.substitute_x(gamma).mul_tpow(gamma)
                    == inst.mul_tpow(alpha)):
                q_inst = r.Q.substitute_x(gamma).mul_tpow(gamma)
                assert q_inst == LaurentPoly.monomial(2, alpha)
                hits.append(r)
        assert len(hits) == 1, (alpha, hits)


def test_ci_to_rules_identity_postcondition(tanln_field, tanln_basic):
    _, op, _ = tanln_field
    for r in tanln_basic.rules:
        validate_rule(r, op, samples=12)


# -- offsets -------------------------------------------------------------------------

def test_offsets(tan_basic, tanln_complete):
    assert tan_basic.rules[0].offset == (0, -1)
    r6 = tanln_complete.rules[-1]
    assert r6.offset == (1, 0, 2)


def test_offset_of_identity():
    order_rules = basic_rules
    ci = ConditionalIdentity(tpoly("1 + t1^-1", 2), tpoly("t1", 2), TRUE)
    from redint.poly import MonomialOrder
    assert offset_of(ci, MonomialOrder.lex(2)) == (1, 0)


# -- reducibility and reduction of conditional identities ------------------------------

def test_tan_pair_reduction(tan_basic):
    r1, r2 = tan_basic.rules
    x2 = ParamPoly.variable(2, 1)
    ci = ConditionalIdentity(r2.P, r2.Q, atom(x2 - 1, "=0"))
    out = reduce_ci(ci, r1)
    assert out.P == xtpoly(
        "(1-x2^2)*t2^-2 + x1*(x2-3)*t1^-1*t2 - x1*(x2+1)*t1^-1*t2^-1", 2)
    assert out.Q == xtpoly("(x2-3)*t2 - (x2+1)*t2^-1", 2)
    assert out.B == ci.B  # the condition is untouched
    # leading monomial strictly decreased
    order = tan_basic.order
    assert order.compare(leading_data(out.P, order).lm,
                         leading_data(ci.P, order).lm) < 0


def test_not_reducible_needs_implication(tan_basic):
    r1, r2 = tan_basic.rules
    x2 = ParamPoly.variable(2, 1)
    ci = ConditionalIdentity(r2.P, r2.Q, atom(x2 - 1, "=0"))
    reduced = reduce_ci(ci, r1)
    # x2 = 1 does not imply the shifted condition x2 >= 3 and x2 != 5
    assert not ci_reducible(reduced, r1)


def test_reducible_by_false_rule_is_false(tan_basic):
    from redint.conditions import FALSE
    from redint.rules import ReductionRule
    r1 = tan_basic.rules[0]
    dead = ReductionRule(r1.P, r1.Q, FALSE, tan_basic.order)
    ci = ConditionalIdentity(r1.P, r1.Q, TRUE)
    assert not ci_reducible(ci, dead)


def test_tanln_inner_reductions_run_four_times(tanln_basic):
    """The appendix reduces the first pair by the generic rule four times."""
    r1, r2 = tanln_basic.rules[0], tanln_basic.rules[1]
    from redint.conditions import cond_simplify
    b = cond_simplify(cond_and(r1.B, r2.B))
    ci = ConditionalIdentity(r2.P, r2.Q, b)
    ci = reduce_ci(ci, r1)
    count = 0
    order = tanln_basic.order
    while ci_reducible(ci, r1) and order.key(r1.offset) < order.key(
            offset_of(ci, order)):
        ci = reduce_ci(ci, r1)
        count += 1
    assert count == 4
    assert ci.Q == xtpoly(
        "(x3-3)*(x3-4) - x1*(x3-4)*t3^-1 - x2*(x3-4)*t2^-1*t3^-1"
        " + (x1^2+3*x3-x3^2)*t3^-2 + 2*x1*x2*t2^-1*t3^-2"
        " + (x2^2-x2)*t2^-2*t3^-2", 3)


def test_reduce_ci_conserves_identity(tan_field, tan_basic):
    """Reduction outputs encode conditional identities (checked on samples)."""
    _, op, _ = tan_field
    r1, r2 = tan_basic.rules
    ci = ConditionalIdentity(r2.P, r2.Q, cond_and(r1.B, r2.B))
    out = reduce_ci(ci, r1)
    for alpha in itertools.product(range(8), repeat=2):
        if not cond_eval(out.B, alpha):
            continue
        q_inst = out.Q.substitute_x(alpha).mul_tpow(alpha)
        p_inst = out.P.substitute_x(alpha).mul_tpow(alpha)
        assert apply_L(op, q_inst) == p_inst


# -- critical pairs ---------------------------------------------------------------------

def test_tan_basic_critical_pair(tan_basic):
    r1, r2 = tan_basic.rules
    yes, witness = critical_pair(r1, r2)
    assert yes and witness is not None and witness[1] == 1


def test_airy_family_no_critical_pairs(airy):
    from redint.builtin import airy_rules
    _, _, _, system = airy
    generic = system.rules[0]
    members = [airy_rules(j) for j in range(6)]
    for m in members:
        yes, _ = critical_pair(generic, m)
        assert not yes
    for a, b in itertools.combinations(members, 2):
        yes, _ = critical_pair(a, b)
        assert not yes


def test_identical_conditions_pair_when_satisfiable(tan_basic):
    from redint.rules import ReductionRule
    r1 = tan_basic.rules[0]
    clone = ReductionRule(r1.P, r1.Q, r1.B, tan_basic.order, index=99)
    yes, witness = critical_pair(r1, clone)
    assert yes and witness is not None


# -- polynomial reduction steps ------------------------------------------------------------

def test_reduce_poly_step_tan(tan_complete):
    r4 = tan_complete.rules[1]
    f = tpoly("t1", 2)
    f2, delta = reduce_poly_step(f, r4, (1, 0))
    assert f2 == tpoly("-1/2*t2", 2)
    assert delta == tpoly("1/4*t1^2*t2^2 + 1/4*t1^2 + 1/2*t1*t2", 2)


def test_reduce_poly_step_airy(airy):
    _, _, _, system = airy
    generic = system.rules[0]
    f = tpoly("t3^2", 3)
    f2, delta = reduce_poly_step(f, generic, (0, 0, 2))
    assert f2 == tpoly("-t1*t2^2", 3)
    assert delta == tpoly("t2*t3", 3)


def test_reduce_poly_step_preconditions(tan_complete):
    r1 = tan_complete.rules[0]
    with pytest.raises(ValueError, match="does not occur"):
        reduce_poly_step(tpoly("t1", 2), r1, (0, 1))
    with pytest.raises(ValueError, match="condition fails"):
        reduce_poly_step(tpoly("t1", 2), r1, (1, 0))


def test_reduce_poly_step_conservation(tan_field, tan_complete):
    _, op, _ = tan_field
    rng = random.Random(19)
    for _ in range(30):
        u = LaurentPoly.zero(2)
        for _ in range(3):
            u += LaurentPoly.monomial(
                2, (rng.randint(0, 3), rng.randint(0, 3)), rng.randint(-3, 3))
        f = apply_L(op, u)
        r = f
        total = LaurentPoly.zero(2)
        for _ in range(200):
            target = None
            for alpha in sorted(r.terms, key=tan_complete.order.key,
                                reverse=True):
                rules = tan_complete.rules_applicable(alpha)
                if rules:
                    target = (alpha, rules[0])
                    break
            if target is None:
                break
            r, delta = reduce_poly_step(r, target[1], target[0])
            total += delta
            assert apply_L(op, total) + r == f  # conservation at every step

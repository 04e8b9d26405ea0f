"""Conditional identities and reduction rules for a monomial-indexed operator.

A triple (P, Q, B) encodes the parametric family of identities

    L(Q(alpha,t) t^alpha) = P(alpha,t) t^alpha      for all alpha in N^n with B(alpha).

A reduction rule additionally has leading t-monomial 1 in P and a leading
coefficient that cannot vanish under B, so instances rewrite the monomial
t^alpha into an image element plus order-smaller terms.  This module covers
the conversion of a conditional identity into reduction rules (splitting off
the degenerate cases of the leading coefficient), reduction of conditional
identities by rules, critical pairs, and single reduction steps on
polynomials with preimage tracking.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .conditions import (FALSE, TRUE, Atom, FalseCond, atom, cond_and,
                         cond_eval, cond_implies, cond_or, cond_sat,
                         cond_simplify, cond_subs_shift)
from .diffop import apply_L
from .poly import (LaurentPoly, MonomialOrder, ParamPoly, leading_data,
                   param_gcd)


@dataclass(frozen=True)
class ConditionalIdentity:
    P: LaurentPoly
    Q: LaurentPoly
    B: object  # Condition

    @property
    def nvars(self):
        return self.P.nvars


class ReductionRule:
    """A conditional identity with lm_t(P) = 1 under the governing order.

    Cached data: the leading coefficient of P, the offset (the exponent
    vector of lm_t(Q), since lm_t(P) = 1), and whether the offset is exact
    (lc_t(Q) provably nonvanishing under B)."""

    __slots__ = ("P", "Q", "B", "order", "lc", "offset", "exact_offset", "index")

    def __init__(self, P, Q, B, order, index=None):
        ld = leading_data(P, order)
        if ld.lm is None or any(ld.lm):
            raise ValueError("reduction rule requires lm_t(P) = 1")
        self.P = P
        self.Q = Q
        self.B = B
        self.order = order
        self.lc = ld.lc
        ldq = leading_data(Q, order)
        if ldq.lm is None:
            raise ValueError("reduction rule requires Q != 0")
        self.offset = ldq.lm
        imp = cond_implies(B, atom(ldq.lc, "!=0"), P.nvars)
        self.exact_offset = imp.status == "proved"
        self.index = index

    @property
    def nvars(self):
        return self.P.nvars

    def as_identity(self):
        return ConditionalIdentity(self.P, self.Q, self.B)

    def applicable_at(self, alpha):
        """Whether the rule reduces t^alpha: B holds and lc does not vanish."""
        return cond_eval(self.B, alpha) and self.lc.evaluate(alpha) != 0

    def __repr__(self):
        return f"ReductionRule(index={self.index}, offset={self.offset})"


class ReductionSystem:
    """A monomial order together with finite rules and rule families."""

    def __init__(self, order, rules, families=(), metadata=None):
        self.order = order
        self.rules = list(rules)
        self.families = list(families)
        self.metadata = dict(metadata or {})

    @property
    def nvars(self):
        return self.order.n

    def all_finite_rules(self):
        return list(self.rules)

    def rules_applicable(self, alpha):
        """Rules (finite first, then family members) that reduce t^alpha."""
        out = [r for r in self.rules if r.applicable_at(alpha)]
        for fam in self.families:
            r = fam.rule_for_monomial(alpha)
            if r is not None:
                out.append(r)
        return out

    def __repr__(self):
        fams = f", families={[f.name for f in self.families]}" if self.families else ""
        return f"ReductionSystem({len(self.rules)} rules{fams})"


def offset_of(obj, order=None):
    """Exponent-vector offset lm_t(Q) - lm_t(P)."""
    if isinstance(obj, ReductionRule):
        return obj.offset
    order = order or getattr(obj, "order", None)
    lp = leading_data(obj.P, order).lm
    lq = leading_data(obj.Q, order).lm
    if lp is None or lq is None:
        raise ValueError("offset undefined for zero P or Q")
    return tuple(q - p for p, q in zip(lp, lq))


def _nonzero_somewhere(P):
    """Condition 'P(alpha, t) != 0', i.e. some t-coefficient nonvanishing."""
    return cond_or(*(atom(c, "!=0") for c in P.terms.values()))


def ci_to_rules(ci, order, box_bound=32, next_index=None):
    """Split a conditional identity into reduction rules.

    Walks the terms of P from the leading one down; whenever the current
    leading coefficient can be nonzero under the accumulated condition, emits
    the shifted rule and strengthens the condition with 'that coefficient
    vanishes'.  Existential questions answered UNKNOWN are treated as 'yes'
    (false positives are allowed, false negatives are not)."""
    P, Q, B = ci.P, ci.Q, ci.B
    n = ci.nvars
    rules = []
    if Q.is_zero():
        # every instance of P is then zero, so only inert rules could arise
        return rules
    while not P.is_zero():
        guard = cond_sat(cond_and(B, _nonzero_somewhere(P)), n, box_bound)
        if guard.status == "unsat":
            break
        ld = leading_data(P, order)
        lc_ok = cond_sat(cond_and(B, atom(ld.lc, "!=0")), n, box_bound)
        if lc_ok.status != "unsat":
            beta = ld.lm
            neg = tuple(-b for b in beta)
            Pm = P.shift_x(beta)
            Qm = Q.shift_x(beta)
            Bm = cond_and(
                cond_subs_shift(B, neg),
                atom(ld.lc.subs_shift(neg), "!=0"),
                *(atom(ParamPoly.variable(n, i) - b, ">=0")
                  for i, b in enumerate(beta) if b > 0))
            Bm = cond_simplify(Bm, box_bound)
            # a condition proved empty yields an inert rule; skip it
            if not isinstance(Bm, FalseCond):
                idx = None if next_index is None else next_index()
                rules.append(ReductionRule(Pm, Qm, Bm, order, index=idx))
            B = cond_and(B, atom(ld.lc, "=0"))
        P = P - ld.lt
    return rules


def basic_rules(op, order, box_bound=32):
    """The precomplete system obtained from (p, 1, TRUE); the first rule is
    the generic rule, every rule has a monomial Q and exact offset."""
    n = op.deriv.n
    counter = _Counter()
    ci = ConditionalIdentity(op.p, LaurentPoly.one(n), TRUE)
    rules = ci_to_rules(ci, order, box_bound, next_index=counter.next)
    return ReductionSystem(order, rules,
                           metadata={"source": "basic", "complete": False})


class _Counter:
    def __init__(self, start=1):
        self.value = start

    def next(self):
        v = self.value
        self.value += 1
        return v


def ci_reducible(ci, rule, box_bound=32):
    """Whether the conditional identity is reducible by the rule: B must
    provably imply the rule's condition and nonvanishing leading coefficient
    at the shifted point.  UNKNOWN counts as 'no' (reduction is declined)."""
    ld = leading_data(ci.P, rule.order)
    if ld.lm is None:
        raise ValueError("cannot reduce a conditional identity with P = 0")
    beta = ld.lm
    target = cond_and(cond_subs_shift(rule.B, beta),
                      atom(rule.lc.subs_shift(beta), "!=0"))
    imp = cond_implies(ci.B, target, ci.nvars, box_bound)
    return imp.status == "proved"


def reduce_ci(ci, rule):
    """One reduction of a conditional identity by a rule (the condition is
    unchanged; the leading terms of P cancel)."""
    ld = leading_data(ci.P, rule.order)
    beta = ld.lm
    lc1_shifted = rule.lc.subs_shift(beta)
    g = param_gcd(ld.lc, lc1_shifted)
    c_left = lc1_shifted.divexact(g)
    c_right = ld.lc.divexact(g)
    P1s = rule.P.subs_x_plus(beta).mul_tpow(beta)
    Q1s = rule.Q.subs_x_plus(beta).mul_tpow(beta)
    Pt = ci.P * c_left - P1s * c_right
    Qt = ci.Q * c_left - Q1s * c_right
    return ConditionalIdentity(Pt, Qt, ci.B)


def critical_pair(r1, r2, box_bound=32):
    """Whether two rules form a critical pair: their conditions are
    simultaneously satisfiable.  UNKNOWN counts as 'yes' (false positive).
    Returns (answer, witness-or-None)."""
    if r1 is r2:
        raise ValueError("critical_pair needs two distinct rules")
    r = cond_sat(cond_and(r1.B, r2.B), r1.nvars, box_bound)
    if r.status == "sat":
        return True, r.witness
    if r.status == "unsat":
        return False, None
    return True, None


def reduce_poly_step(f, rule, alpha):
    """One reduction step of an ordinary polynomial at the monomial t^alpha.

    Returns (f', delta) with f = L(delta) + f' and t^alpha removed from the
    support of f'.  Preconditions are checked individually."""
    alpha = tuple(alpha)
    coeff = f.coeff(alpha)
    if coeff.is_zero():
        raise ValueError(f"monomial t^{alpha} does not occur in the polynomial")
    if not cond_eval(rule.B, alpha):
        raise ValueError(f"rule condition fails at alpha={alpha}")
    lc_val = rule.lc.evaluate(alpha)
    if lc_val == 0:
        raise ValueError(f"leading coefficient vanishes at alpha={alpha}")
    lam = coeff.constant_value() / lc_val
    f_new = f - rule.P.substitute_x(alpha).mul_tpow(alpha) * lam
    delta = rule.Q.substitute_x(alpha).mul_tpow(alpha) * lam
    assert alpha not in f_new.terms
    return f_new, delta


def validate_rule(rule, op, samples=10, box_bound=32, rng=None):
    """Check the defining identity L(Q(a,t)t^a) = P(a,t)t^a on sampled
    points satisfying B; raises AssertionError on violation.  Returns the
    number of conforming samples found."""
    n = rule.nvars
    rng = rng or random.Random(7)
    found = 0
    sat = cond_sat(rule.B, n, box_bound)
    candidates = []
    if sat.status == "sat":
        candidates.append(sat.witness)
    tries = 0
    while len(candidates) < samples and tries < samples * 60:
        tries += 1
        alpha = tuple(rng.randrange(0, 12) for _ in range(n))
        if cond_eval(rule.B, alpha):
            candidates.append(alpha)
    for alpha in candidates[:samples]:
        if rule.lc.evaluate(alpha) == 0:
            raise AssertionError(
                f"lc_t(P) vanishes at conforming point {alpha}")
        Q_inst = rule.Q.substitute_x(alpha).mul_tpow(alpha)
        P_inst = rule.P.substitute_x(alpha).mul_tpow(alpha)
        if not Q_inst.is_ordinary():
            raise AssertionError(f"Q instance at {alpha} has negative exponents")
        if apply_L(op, Q_inst) != P_inst:
            raise AssertionError(f"rule identity fails at alpha={alpha}")
        if rule.exact_offset:
            lcq = leading_data(rule.Q, rule.order).lc
            if lcq.evaluate(alpha) == 0:
                raise AssertionError(
                    f"exact offset violated: lc_t(Q) vanishes at {alpha}")
        found += 1
    return found

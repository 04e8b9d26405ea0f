"""Rigorous weighted degree bounds derived from reduction systems.

A degree bound for an operator L w.r.t. weights w is a function phi such
that every f in the image of L has some preimage g with
deg_w(g) <= phi(deg_w(f)).  Bound functions are represented as a small AST
of monotone building blocks evaluated exactly on rationals; -inf propagates
from the zero polynomial (deg_w(0) = -inf) through every node.

Construction routes:
  * from a complete reduction system whose rules all satisfy deg_w(P) = 0,
    the bound x + sup deg_w(Q) (family tails are asserted by the caller and
    verified up to a cap);
  * from w-homogeneity of the defining Laurent polynomial, the bound x - d;
  * by positive combination across weight vectors;
  * the sharpened piecewise forms known for the shipped systems.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import floor, inf

from .poly import LaurentPoly, weighted_degree

NEG_INF = -inf
POS_INF = inf


# ---------------------------------------------------------------------------
# Bound function AST
# ---------------------------------------------------------------------------

class DegreeBoundFn:
    """Base class for exact monotone bound functions on Q u {-inf}."""

    def __call__(self, x):
        if x == NEG_INF:
            return NEG_INF
        return self._eval(Fraction(x))

    def _eval(self, x):
        raise NotImplementedError


class Const(DegreeBoundFn):
    def __init__(self, value):
        self.value = value if value in (NEG_INF, POS_INF) else Fraction(value)

    def _eval(self, x):
        return self.value

    def __repr__(self):
        return f"(const {self.value})"


class Affine(DegreeBoundFn):
    def __init__(self, a, b):
        self.a = Fraction(a)
        self.b = Fraction(b)

    def _eval(self, x):
        return self.a * x + self.b

    def __repr__(self):
        return f"(affine {self.a} {self.b})"


class FloorAffine(DegreeBoundFn):
    def __init__(self, a, b):
        self.a = Fraction(a)
        self.b = Fraction(b)

    def _eval(self, x):
        return Fraction(floor(self.a * x + self.b))

    def __repr__(self):
        return f"(floor-affine {self.a} {self.b})"


class Scale(DegreeBoundFn):
    def __init__(self, factor, child):
        factor = Fraction(factor)
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        self.factor = factor
        self.child = child

    def _eval(self, x):
        v = self.child._eval(x)
        if v in (NEG_INF, POS_INF):
            return v
        return self.factor * v

    def __repr__(self):
        return f"(scale {self.factor} {self.child!r})"


class Precompose(DegreeBoundFn):
    """child(c * x) for a nonnegative stretch c."""

    def __init__(self, c, child):
        c = Fraction(c)
        if c < 0:
            raise ValueError("precompose factor must be nonnegative")
        self.c = c
        self.child = child

    def _eval(self, x):
        return self.child._eval(self.c * x)

    def __repr__(self):
        return f"(precompose {self.c} {self.child!r})"


class Sum(DegreeBoundFn):
    def __init__(self, children):
        self.children = tuple(children)

    def _eval(self, x):
        total = Fraction(0)
        for c in self.children:
            v = c._eval(x)
            if v == NEG_INF:
                return NEG_INF
            if v == POS_INF:
                return POS_INF
            total += v
        return total

    def __repr__(self):
        return "(sum " + " ".join(map(repr, self.children)) + ")"


class Max(DegreeBoundFn):
    def __init__(self, children):
        self.children = tuple(children)

    def _eval(self, x):
        return max(c._eval(x) for c in self.children)

    def __repr__(self):
        return "(max " + " ".join(map(repr, self.children)) + ")"


class Piecewise(DegreeBoundFn):
    """pieces is a list of (threshold, fn) meaning 'use fn for x < threshold';
    final applies from the last threshold on.  Thresholds strictly increase."""

    def __init__(self, pieces, final):
        self.pieces = tuple((Fraction(t), f) for t, f in pieces)
        for (t1, _), (t2, _) in zip(self.pieces, self.pieces[1:]):
            if t1 >= t2:
                raise ValueError("piecewise thresholds must increase")
        self.final = final

    def _eval(self, x):
        for t, f in self.pieces:
            if x < t:
                return f._eval(x)
        return self.final._eval(x)

    def __repr__(self):
        inner = " ".join(f"{t} {f!r}" for t, f in self.pieces)
        return f"(piecewise {inner} {self.final!r})"


def bound_eval(phi, x):
    """Exact evaluation; x = -inf (the zero polynomial) gives -inf."""
    return phi(x)


def check_monotone(phi, samples=100, lo=-20, hi=20, seed=11):
    """Sampled monotonicity check on ordered rational pairs; raises on a
    violation.  Used by every public constructor."""
    rng = random.Random(seed)
    for _ in range(samples):
        a = Fraction(rng.randrange(lo * 4, hi * 4), rng.randrange(1, 5))
        b = a + Fraction(rng.randrange(0, 40), rng.randrange(1, 5))
        va, vb = phi(a), phi(b)
        if va > vb:
            raise ValueError(f"bound function not monotone: phi({a}) = {va} "
                             f"> phi({b}) = {vb}")
    return phi


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def bound_from_system(system, w, family_index_cap=10, family_tail_sup=None):
    """The bound x + sup deg_w(Q) over a complete system.

    Every inspected rule must satisfy deg_w(P) = 0 exactly.  Family members
    are inspected up to family_index_cap; the supremum over each whole
    family must be asserted by the caller via family_tail_sup (the shipped
    families' theorems provide it) and is verified on the inspected members."""
    w = tuple(Fraction(v) for v in w)
    sup = NEG_INF
    for rule in system.rules:
        name = f"r{rule.index}" if rule.index is not None else repr(rule)
        d = weighted_degree(rule.P, w)
        if d != 0:
            raise ValueError(f"incompatible weight vector: deg_w(P) = {d} != 0 "
                             f"for rule {name}")
        sup = max(sup, weighted_degree(rule.Q, w))
    if system.families:
        if family_tail_sup is None:
            raise ValueError(
                "system has rule families: pass family_tail_sup, the asserted "
                "supremum of deg_w(Q) over all members")
        family_tail_sup = Fraction(family_tail_sup)
        for fam in system.families:
            for j, rule in enumerate(fam.members_up_to(family_index_cap)):
                d = weighted_degree(rule.P, w)
                if d != 0:
                    raise ValueError(
                        f"incompatible weight vector: deg_w(P) = {d} != 0 for "
                        f"member {j} of family {fam.name}")
                dq = weighted_degree(rule.Q, w)
                if dq > family_tail_sup:
                    raise ValueError(
                        f"asserted family tail supremum {family_tail_sup} "
                        f"violated by member {j} of family {fam.name}: {dq}")
        sup = max(sup, family_tail_sup)
    if sup == NEG_INF:
        return check_monotone(Const(NEG_INF))
    return check_monotone(Affine(1, sup))


def bound_homogeneous(p, w):
    """The bound x - d when the operator's Laurent polynomial p is
    w-homogeneous of w-degree d."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    w = tuple(Fraction(v) for v in w)
    degs = {sum(wi * ei for wi, ei in zip(w, e)) for e in p.terms}
    if len(degs) != 1:
        raise ValueError(f"polynomial is not homogeneous w.r.t. {w}: "
                         f"degrees {sorted(degs)}")
    d = next(iter(degs))
    return check_monotone(Affine(1, -d))


def bound_compose(entries, v):
    """Combine bounds across weight vectors: with entries (w_i, phi_i,
    lambda_i, c_i) such that lambda_i > 0, v <= sum lambda_i w_i
    componentwise, and w_i <= c_i v componentwise, the function
    sum lambda_i phi_i(c_i x) bounds deg_v."""
    v = tuple(Fraction(x) for x in v)
    parts = []
    total = [Fraction(0)] * len(v)
    for w, phi, lam, c in entries:
        w = tuple(Fraction(x) for x in w)
        lam = Fraction(lam)
        c = Fraction(c)
        if lam <= 0:
            raise ValueError("combination weights lambda_i must be positive")
        for j, (wj, vj) in enumerate(zip(w, v)):
            if wj > c * vj:
                raise ValueError(
                    f"hypothesis deg_w(f) <= c*deg_v(f) fails at component "
                    f"{j + 1}: w_j = {wj} > c*v_j = {c * vj}")
        total = [t + lam * wj for t, wj in zip(total, w)]
        parts.append(Scale(lam, Precompose(c, phi)))
    for j, (vj, tj) in enumerate(zip(v, total)):
        if vj > tj:
            raise ValueError(
                f"hypothesis v <= sum lambda_i w_i fails at component "
                f"{j + 1}: {vj} > {tj}")
    phi = parts[0] if len(parts) == 1 else Sum(parts)
    return check_monotone(phi)


def rescale_bound(phi, w, v):
    """Bound w.r.t. v from a bound w.r.t. w when v has zeros exactly where w
    does: lambda * phi(c x) with lambda = max v_i/w_i and c = max w_i/v_i."""
    w = tuple(Fraction(x) for x in w)
    v = tuple(Fraction(x) for x in v)
    if any((wi == 0) != (vi == 0) for wi, vi in zip(w, v)):
        raise ValueError("weight vectors must vanish in the same positions")
    lam = max(vi / wi for wi, vi in zip(w, v) if wi)
    c = max(wi / vi for wi, vi in zip(w, v) if wi)
    return check_monotone(Scale(lam, Precompose(c, phi)))


_BUILTIN_BOUNDS = {
    # airy, w = (2,0,1): x + 2
    "airy-w201": lambda: Affine(1, 2),
    # airy, w = (2,-1,0): floor(x)-1 below -2, then 2*floor(x/2)+2
    "airy-w2m10": lambda: Piecewise(
        [(-2, FloorAffine(1, -1))],
        Sum([Scale(2, FloorAffine(Fraction(1, 2), 0)), Const(2)])),
    # airy, total degree: floor(3x/2) + 1
    "airy-total": lambda: Sum([FloorAffine(Fraction(3, 2), 0), Const(1)]),
    # cei block order 1, w = (1,w2,w2+2): x - 2
    "cei1-w": lambda: Affine(1, -2),
    # cei block order 2, w = (1,-1,-1): floor(x) below 0, 0 on [0,3),
    # floor(x)-2 from 3 on
    "cei2-w1m1m1": lambda: Piecewise(
        [(0, FloorAffine(1, 0)), (3, Const(0))], FloorAffine(1, -2)),
    # cei block order 2, total degree: -inf below 2, then 2*floor(x/2)
    "cei2-total": lambda: Piecewise(
        [(2, Const(NEG_INF))], Scale(2, FloorAffine(Fraction(1, 2), 0))),
}

BUILTIN_BOUND_NAMES = tuple(sorted(_BUILTIN_BOUNDS))


def builtin_bound(name):
    """The sharpened closed-form bounds shipped for the built-in systems."""
    try:
        ctor = _BUILTIN_BOUNDS[name]
    except KeyError:
        raise ValueError(f"unknown builtin bound {name!r}; available: "
                         f"{', '.join(BUILTIN_BOUND_NAMES)}") from None
    return check_monotone(ctor())

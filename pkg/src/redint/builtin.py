"""Built-in infinite complete reduction systems and their coefficient
machinery.

Three families are shipped, each consisting of a generic rule plus a rule
per natural number covering the degenerate monomials (those with last
exponent zero, or fixed by the condition):

  airy        field of x, Ai(x), Ai'(x); order matrix rows
              (0,1,1),(2,0,1),(0,0,1).  Odd members have closed-form
              coefficients built from double factorials; even members solve
              a small bidiagonal-plus-column linear system over Q[x1].
  cei-block1  field of x and the complete elliptic integrals K(x), E(x)
              under the block order (0,1,1),(0,0,1),(1,0,0); coefficients
              satisfy a two-dimensional recursion.
  cei-block2  same operator under the swapped block order
              (1,0,0),(0,1,1),(0,0,1); fully explicit rules.

No two members of a family form a critical pair (their conditions pin the
member index), so reduction can dispatch on the exponent vector directly.
A hard-instance generator is included that produces integrands with bounded
x-degree whose integrals need arbitrarily large x-degree.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .conditions import atom, cond_and
from .diffop import DerivationSpec, OperatorSpec, build_p
from .linalg import solve_fraction_free
from .poly import LaurentPoly, MonomialOrder, ParamPoly, parse_poly
from .rules import ReductionRule, ReductionSystem


def double_factorial(k):
    """k!! with (-1)!! = 0!! = 1."""
    if k < -1:
        raise ValueError("double factorial of an integer below -1")
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


class RuleFamily:
    """Lazily generated infinite sequence of reduction rules.

    member(j) builds and caches the j-th rule; rule_for_monomial(alpha)
    returns the at most one member applicable to t^alpha."""

    def __init__(self, name, order, generator, member_index):
        self.name = name
        self.order = order
        self._generator = generator
        self._member_index = member_index
        self._cache = {}
        self._lock = threading.Lock()

    def member(self, j):
        if j < 0:
            raise ValueError("family index must be nonnegative")
        with self._lock:
            rule = self._cache.get(j)
            if rule is None:
                rule = self._generator(j)
                self._cache[j] = rule
        return rule

    def rule_for_monomial(self, alpha):
        j = self._member_index(alpha)
        if j is None:
            return None
        rule = self.member(j)
        return rule if rule.applicable_at(alpha) else None

    def members_up_to(self, cap):
        return [self.member(j) for j in range(cap + 1)]

    def __repr__(self):
        return f"RuleFamily({self.name})"


@dataclass
class BuiltinContext:
    """A shipped field: derivation, operator, order, and complete system."""
    name: str
    deriv: DerivationSpec
    op: OperatorSpec
    order: MonomialOrder
    system: ReductionSystem


def _poly(text, n):
    return parse_poly(text, [], [f"t{i+1}" for i in range(n)])


def _xvar(i, n=3):
    return ParamPoly.variable(n, i)


def _mono(coeff, exps, n=3):
    return LaurentPoly.monomial(n, exps, 1) * coeff


# ---------------------------------------------------------------------------
# Airy functions: t1 = x, t2 = Ai(x), t3 = Ai'(x)
# ---------------------------------------------------------------------------

AIRY_ORDER_ROWS = ((0, 1, 1), (2, 0, 1), (0, 0, 1))


def airy_field():
    one = _poly("1", 3)
    deriv = DerivationSpec(
        ["t1", "t2", "t3"],
        [(_poly("1", 3), one), (_poly("t3", 3), one), (_poly("t1*t2", 3), one)])
    op = build_p(deriv, one)
    return deriv, op, MonomialOrder(AIRY_ORDER_ROWS)


def airy_even_coefficients(j):
    """(b_{j,0}, [b_{j,1}, ..., b_{j,j/2+1}]) for even j, solved fraction-free
    over Q[x1]."""
    if j % 2:
        raise ValueError("even index required")
    h = j // 2
    x1 = _xvar(0)
    b0 = x1 + 1 - Fraction(j, 4)
    size = h + 1
    zero = ParamPoly.zero(3)
    A = [[zero for _ in range(size)] for _ in range(size)]
    for m in range(size):
        A[m][0] = (x1 + 1 - m) * (comb(h, m) * (-1) ** m)
    for m in range(1, size):
        A[m][m] = ParamPoly.const(3, j - 2 * m + 1)
        A[m - 1][m] = ParamPoly.const(3, 2 * m - 1)
    rhs = [b0] + [zero] * (size - 1)
    if size == 1:
        return b0, [b0.divexact(A[0][0])]
    solution, _det = solve_fraction_free(A, rhs)
    return b0, solution


def airy_matrix(j):
    """The even-index coefficient matrix (for determinant checks)."""
    h = j // 2
    x1 = _xvar(0)
    size = h + 1
    zero = ParamPoly.zero(3)
    A = [[zero for _ in range(size)] for _ in range(size)]
    for m in range(size):
        A[m][0] = (x1 + 1 - m) * (comb(h, m) * (-1) ** m)
    for m in range(1, size):
        A[m][m] = ParamPoly.const(3, j - 2 * m + 1)
        A[m - 1][m] = ParamPoly.const(3, 2 * m - 1)
    return A


def airy_coefficient_odd(j, m):
    """c_{j,m} = (-1)^(m+1) (j-1)!! / ((j-2m+1)!! (2m-1)!!)."""
    return Fraction((-1) ** (m + 1) * double_factorial(j - 1),
                    double_factorial(j - 2 * m + 1) * double_factorial(2 * m - 1))


def airy_rules(j, order=None):
    """The j-th Airy family rule (j >= 0; j = alpha2 when alpha3 = 0)."""
    if j < 0:
        raise ValueError("family index must be nonnegative")
    order = order or MonomialOrder(AIRY_ORDER_ROWS)
    x1, x2, x3 = (_xvar(i) for i in range(3))
    B = cond_and(atom(x3, "=0"), atom(x2 - j, "=0"))
    if j % 2:
        half = (j + 1) // 2
        P = LaurentPoly.one(3)
        Q = LaurentPoly.zero(3)
        for m in range(1, half + 1):
            c = airy_coefficient_odd(j, m)
            P += _mono((x1 - m) * c, (-m - 1, -2 * m + 1, 2 * m - 1))
            Q += _mono(ParamPoly.const(3, c), (-m, -2 * m + 1, 2 * m - 1))
        B = cond_and(B, atom(x1 - Fraction(j + 1, 2), ">=0"))
    else:
        h = j // 2
        b0, bs = airy_even_coefficients(j)  # bs[i] = b_{j,i+1}
        P = _mono(b0, (0, 0, 0))
        Q = LaurentPoly.zero(3)
        for m in range(h + 1):
            Q += _mono(bs[0] * (comb(h, m) * (-1) ** m),
                       (-m + 1, -2 * m, 2 * m))
        for m in range(1, h + 1):
            P += _mono(bs[m] * (x1 - m), (-m - 1, -2 * m + 1, 2 * m - 1))
            Q += _mono(bs[m], (-m, -2 * m + 1, 2 * m - 1))
        if h - 1 > 0:
            B = cond_and(B, atom(x1 - (h - 1), ">=0"))
    return ReductionRule(P, Q, B, order, index=None)


def airy_system():
    deriv, op, order = airy_field()
    generic = _airy_generic(order)
    family = RuleFamily(
        "airy", order, lambda j: airy_rules(j, order),
        lambda alpha: alpha[1] if alpha[2] == 0 else None)
    return ReductionSystem(order, [generic], [family],
                           metadata={"source": "builtin", "name": "airy",
                                     "complete": True, "disjoint": True})


def _airy_generic(order):
    x1, x2, x3 = (_xvar(i) for i in range(3))
    P = (_mono(x2 + 1, (0, 0, 0)) + _mono(x3 - 1, (1, 2, -2))
         + _mono(x1, (-1, 1, -1)))
    Q = LaurentPoly.monomial(3, (0, 1, -1))
    B = atom(x3 - 1, ">=0")
    return ReductionRule(P, Q, B, order, index=0)


# ---------------------------------------------------------------------------
# Complete elliptic integrals: t1 = x, t2 = K(x), t3 = E(x)
# ---------------------------------------------------------------------------

CEI1_ORDER_ROWS = ((0, 1, 1), (0, 0, 1), (1, 0, 0))
CEI2_ORDER_ROWS = ((1, 0, 0), (0, 1, 1), (0, 0, 1))


def cei_field():
    one = _poly("1", 3)
    deriv = DerivationSpec(
        ["t1", "t2", "t3"],
        [(_poly("1", 3), one),
         (_poly("t3-(1-t1^2)*t2", 3), _poly("t1*(1-t1^2)", 3)),
         (_poly("t3-t2", 3), _poly("t1", 3))])
    op = build_p(deriv, one)
    return deriv, op


def cei_b_table(j):
    """b_{j,m,n} for 0 <= m <= j, 0 <= n <= m, from the two-dimensional
    recursion with b_{j,0,0} = 1 and out-of-range entries zero."""
    x1 = _xvar(0)
    zero = ParamPoly.zero(3)
    table = {(0, 0): ParamPoly.const(3, 1)}

    def get(m, n):
        if m < 0 or n < 0 or n > m:
            return zero
        return table[(m, n)]

    for m in range(1, j + 1):
        for n in range(0, m + 1):
            val = (x1 * (-1) + (j + 2 * (m - n))) * get(m - 1, n) \
                + (x1 - (j + 2 * (m - n + 1))) * get(m - 1, n - 1) \
                + get(m - 2, n) * (j + 2 - m) \
                + get(m - 2, n - 1) * (m - j - 2)
            table[(m, n)] = val * Fraction(1, m)
    return table


def cei_a_coeffs(j, table=None):
    """a_{j,n} for n = 0..j+1 from the b table."""
    x1 = _xvar(0)
    zero = ParamPoly.zero(3)
    table = table if table is not None else cei_b_table(j)

    def get(m, n):
        if m < 0 or n < 0 or n > m:
            return zero
        return table[(m, n)]

    out = []
    for n in range(j + 2):
        out.append((x1 - (3 * j + 2 - 2 * n)) * get(j, n)
                   - (x1 - (3 * j + 4 - 2 * n)) * get(j, n - 1)
                   - get(j - 1, n) + get(j - 1, n - 1))
    return out


def cei_rules_v1(j, order=None):
    """The j-th member for the first block order (j = alpha2 when alpha3=0)."""
    if j < 0:
        raise ValueError("family index must be nonnegative")
    order = order or MonomialOrder(CEI1_ORDER_ROWS)
    x1, x2, x3 = (_xvar(i) for i in range(3))
    table = cei_b_table(j)
    a = cei_a_coeffs(j, table)
    P = LaurentPoly.zero(3)
    for n in range(j + 2):
        P += _mono(a[n], (2 * n - 2 * j - 2, 0, 0))
    Q = LaurentPoly.zero(3)
    for m in range(j + 1):
        for n in range(m + 1):
            Q += _mono(table[(m, n)], (2 * n - 2 * j - 2, m - j, j - m))
    B = cond_and(atom(x3, "=0"), atom(x2 - j, "=0"),
                 atom(x1 - (2 * j + 2), ">=0"), atom(x1 - 2, "!=0"))
    return ReductionRule(P, Q, B, order, index=None)


def cei_system_v1():
    deriv, op = cei_field()
    order = MonomialOrder(CEI1_ORDER_ROWS)
    generic = _cei1_generic(order)
    family = RuleFamily(
        "cei-block1", order, lambda j: cei_rules_v1(j, order),
        lambda alpha: alpha[1] if alpha[2] == 0 else None)
    return ReductionSystem(order, [generic], [family],
                           metadata={"source": "builtin", "name": "cei-block1",
                                     "complete": True, "disjoint": True})


def _cei1_generic(order):
    x1, x2, x3 = (_xvar(i) for i in range(3))
    s = x1 - x2 + x3 - 2
    P = (_mono(x2 + 1, (0, 0, 0))
         + _mono(-s, (2, 1, -1)) + _mono(s, (0, 1, -1))
         + _mono(x3 - 1, (2, 2, -2)) + _mono(-(x3 - 1), (0, 2, -2)))
    Q = LaurentPoly.monomial(3, (0, 1, -1))
    B = atom(x3 - 1, ">=0")
    return ReductionRule(P, Q, B, order, index=0)


def cei_rules_v2(k, order=None):
    """The k-th member for the swapped block order; k = 0 is the generic
    rule, k >= 1 covers alpha3 = k."""
    if k < 0:
        raise ValueError("family index must be nonnegative")
    order = order or MonomialOrder(CEI2_ORDER_ROWS)
    x1, x2, x3 = (_xvar(i) for i in range(3))
    if k == 0:
        s = x1 - x2 + x3 - 2
        P = (_mono(-s, (0, 0, 0)) + _mono(x3, (0, 1, -1))
             + _mono(x2, (-2, -1, 1)) + _mono(s, (-2, 0, 0))
             + _mono(-x3, (-2, 1, -1)))
        Q = LaurentPoly.monomial(3, (-2, 0, 0))
        B = cond_and(atom(x1 - 2, ">=0"), atom(x1 - x2 + x3 - 2, "!=0"))
        return ReductionRule(P, Q, B, order, index=None)
    bracket = (LaurentPoly.monomial(3, (0, 0, 1)) * (x1 + (k - 1))
               - LaurentPoly.monomial(3, (0, 1, 0)) * (x1 * Fraction(1, 2) + (k - 1)))
    core = (LaurentPoly.monomial(3, (0, 0, 1))
            - LaurentPoly.monomial(3, (0, 1, 0)) * Fraction(1, 2))
    if k == 1:
        # the bracket carries the factor (t3 - t2/2), cancelling the -1 power
        P = LaurentPoly.const(3, 1) * x1
    else:
        P = (core ** (k - 2) * bracket).mul_tpow((0, 0, -k + 1))
    Q = (core ** (k - 1) * LaurentPoly.monomial(3, (0, 1, 0))).mul_tpow((0, 0, -k))
    B = cond_and(atom(x3 - k, "=0"), atom(x1 + x3 - 1, "!=0"),
                 atom(x2 - x1 - (k - 2), "=0"))
    return ReductionRule(P, Q, B, order, index=None)


def cei_system_v2():
    deriv, op = cei_field()
    order = MonomialOrder(CEI2_ORDER_ROWS)
    generic = cei_rules_v2(0, order)
    generic.index = 0
    family = RuleFamily(
        "cei-block2", order, lambda k: cei_rules_v2(k, order),
        lambda alpha: alpha[2] if alpha[2] >= 1 else None)
    return ReductionSystem(order, [generic], [family],
                           metadata={"source": "builtin", "name": "cei-block2",
                                     "complete": True, "disjoint": True})


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

BUILTIN_NAMES = ("airy", "cei-block1", "cei-block2")


def builtin_context(name):
    """The shipped field and complete system for a built-in name."""
    if name == "airy":
        deriv, op, order = airy_field()
        return BuiltinContext(name, deriv, op, order, airy_system())
    if name == "cei-block1":
        deriv, op = cei_field()
        system = cei_system_v1()
        return BuiltinContext(name, deriv, op, system.order, system)
    if name == "cei-block2":
        deriv, op = cei_field()
        system = cei_system_v2()
        return BuiltinContext(name, deriv, op, system.order, system)
    raise ValueError(f"unknown builtin system {name!r}; "
                     f"available: {', '.join(BUILTIN_NAMES)}")


# ---------------------------------------------------------------------------
# Hard instances: bounded x-degree integrands with high x-degree integrals
# ---------------------------------------------------------------------------

def airy_hard_instance(m, n, d):
    """(f, g) in the Airy field with dg = f, deg_t1(f) = n, deg_t1(g) = n+m,
    both (0,1,1)-homogeneous of degree d; requires d >= 2m+1."""
    if d < 2 * m + 1:
        raise ValueError("requires d >= 2m+1")
    # univariate scratch ring Q[z]: dict degree -> Fraction
    def zmul(p, q):
        out = {}
        for a, ca in p.items():
            for b, cb in q.items():
                out[a + b] = out.get(a + b, 0) + ca * cb
        return {a: c for a, c in out.items() if c}

    def zscale(p, c):
        return {a: v * c for a, v in p.items() if v * c}

    def zadd(*ps):
        out = {}
        for p in ps:
            for a, c in p.items():
                s = out.get(a, 0) + c
                if s:
                    out[a] = s
                else:
                    out.pop(a, None)
        return out

    def zdiff(p):
        return {a - 1: c * a for a, c in p.items() if a}

    def zint(p):
        return {a + 1: c / (a + 1) for a, c in p.items()}

    g_short = {-1: {}, 0: {0: Fraction(1)}}
    for l in range(1, m + 2):
        deriv = zadd(zmul({2: Fraction(1)}, zdiff(g_short[l - 1])),
                     zscale(zmul({1: Fraction(1)}, g_short[l - 1]), Fraction(-d)),
                     zscale(g_short[l - 2], Fraction(-(m + n - l + 2))))
        g_short[l] = zint(deriv)

    def embed(zpoly, t1deg):
        """z^a t2^d t1^t1deg with z = t3/t2."""
        out = LaurentPoly.zero(3)
        for a, c in zpoly.items():
            out += LaurentPoly.monomial(3, (t1deg, d - a, a), c)
        return out

    f = embed(zscale(zdiff(g_short[m + 1]), Fraction(-1)), n)
    if n > 0:
        f += embed(zscale(g_short[m], Fraction(n)), n - 1)
    g = LaurentPoly.zero(3)
    for l in range(m + 1):
        g += embed(g_short[l], m + n - l)
    return f, g

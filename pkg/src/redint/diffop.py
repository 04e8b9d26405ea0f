"""Derivations on rational function fields and the induced linear operator.

A derivation is specified by the derivatives of the generators t1..tn,
each a quotient of ordinary polynomials.  From it we derive den, the lcm of
the written denominators, and the polynomial derivation tilde = den * d,
which maps polynomials to polynomials.

For a chosen nonzero denominator v, the first-order operator acting on
polynomial numerators is encoded by a single Laurent polynomial p with
coefficients in Q[x1..xn]:

    L(t^alpha) = p(alpha, t) * t^alpha

where p = (v/g) * sum_i x_i * tilde(t_i)/t_i - tilde(v)/g with
g = gcd(v, tilde(v)).  The denominator v always lies in the kernel of L.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import inf

from .linalg import nullspace
from .poly import (LaurentPoly, ParamPoly, divexact_laurent, lcm_poly,
                   poly_gcd)

NEG_INF = -inf


class DerivationSpec:
    """Derivation of C(t1..tn) given by generator derivatives num_i/den_i.

    The lcm of the denominators is accumulated exactly as written (no sign or
    content normalization), so that tilde matches the usual presentation of
    the field; normalizing could flip the sign of every rule downstream."""

    __slots__ = ("n", "var_names", "derivs", "den", "tilde")

    def __init__(self, var_names, derivs):
        self.n = len(var_names)
        self.var_names = list(var_names)
        self.derivs = []
        for num, den in derivs:
            if den.is_zero():
                raise ValueError("zero denominator in derivative")
            for p in (num, den):
                if not (p.has_constant_coeffs() and p.is_ordinary()):
                    raise ValueError("derivatives must be ordinary polynomials")
            self.derivs.append((num, den))
        if len(self.derivs) != self.n:
            raise ValueError("need one derivative per variable")
        den_all = LaurentPoly.one(self.n)
        for _, den in self.derivs:
            den_all = lcm_poly(den_all, den)
        self.den = den_all
        self.tilde = [divexact_laurent(den_all * num, den)
                      for num, den in self.derivs]

    def tilde_derivative(self, f):
        """tilde(f) for an ordinary constant-coefficient polynomial f."""
        out = LaurentPoly.zero(self.n)
        for i, tf in enumerate(self.tilde):
            out += tf * _partial(f, i)
        return out

    def __repr__(self):
        return f"DerivationSpec({self.var_names})"


def _partial(f, i):
    """Partial derivative of a Laurent polynomial w.r.t. t_i."""
    out = {}
    for exp, coeff in f.terms.items():
        e = exp[i]
        if e == 0:
            continue
        nexp = exp[:i] + (e - 1,) + exp[i + 1:]
        c = coeff * e
        cur = out.get(nexp)
        out[nexp] = c if cur is None else cur + c
    return LaurentPoly(f.nvars, out)


def build_tilde(deriv):
    """(den, [tilde(t_i)]) of a derivation."""
    return deriv.den, list(deriv.tilde)


class OperatorSpec:
    """The operator L determined by a derivation and a denominator v."""

    __slots__ = ("deriv", "v", "g", "p")

    def __init__(self, deriv, v, check=True):
        if v.is_zero():
            raise ValueError("v must be nonzero")
        if not (v.has_constant_coeffs() and v.is_ordinary()):
            raise ValueError("v must be an ordinary polynomial")
        self.deriv = deriv
        self.v = v
        tilde_v = deriv.tilde_derivative(v)
        if tilde_v.is_zero():
            g = v * (Fraction(1) / _lead_coeff(v))
        else:
            g = poly_gcd(v, tilde_v)
        self.g = g
        n = deriv.n
        p = LaurentPoly.zero(n)
        v_over_g = divexact_laurent(v, g)
        for i, tf in enumerate(deriv.tilde):
            xi = ParamPoly.variable(n, i)
            p += (v_over_g * tf).mul_tpow(_unit(n, i, -1)) * xi
        p -= divexact_laurent(tilde_v, g)
        self.p = p
        if check:
            self._validate()

    def _validate(self):
        n = self.deriv.n
        if apply_L(self, self.v):
            raise AssertionError("operator invariant violated: L(v) != 0")
        rng = random.Random(20230 + n)
        for _ in range(12):
            alpha = tuple(rng.randrange(0, 6) for _ in range(n))
            inst = self.p.substitute_x(alpha).mul_tpow(alpha)
            if not inst.is_ordinary():
                raise AssertionError(
                    f"operator invariant violated: p(alpha,t)t^alpha has a "
                    f"negative exponent at alpha={alpha}")

    def __repr__(self):
        return f"OperatorSpec(v over {self.deriv.var_names})"


def _unit(n, i, value):
    e = [0] * n
    e[i] = value
    return tuple(e)


def _lead_coeff(p):
    d = p.to_const_dict()
    exp = max(d, key=lambda e: (sum(e), e))
    return d[exp]


def build_p(deriv, v):
    """OperatorSpec for the derivation and denominator v (checked)."""
    return OperatorSpec(deriv, v)


def apply_L(op, f):
    """L(f) for an ordinary constant-coefficient polynomial f.

    Each instantiated term p(alpha,t)t^alpha must itself be ordinary; a
    negative exponent indicates a malformed operator and raises."""
    if not (f.has_constant_coeffs() and f.is_ordinary()):
        raise ValueError("apply_L input must be an ordinary polynomial")
    n = op.deriv.n
    out = LaurentPoly.zero(n)
    for alpha, coeff in f.terms.items():
        inst = op.p.substitute_x(alpha).mul_tpow(alpha)
        if not inst.is_ordinary():
            raise ValueError(
                f"L(t^{alpha}) has a negative exponent; operator is malformed")
        out += inst * coeff.constant_value()
    return out


def apply_derivation_rational(deriv, num, den):
    """d(num/den) as a reduced pair (num', den') of ordinary polynomials."""
    if den.is_zero():
        raise ValueError("zero denominator")
    tnum = deriv.tilde_derivative(num)
    tden = deriv.tilde_derivative(den)
    top = tnum * den - num * tden
    bottom = deriv.den * den * den
    if top.is_zero():
        return LaurentPoly.zero(deriv.n), LaurentPoly.one(deriv.n)
    g = poly_gcd(top, bottom)
    top, bottom = divexact_laurent(top, g), divexact_laurent(bottom, g)
    # scale so the denominator is primitive with positive leading coefficient
    prim = ParamPoly(bottom.nvars, bottom.to_const_dict()).primitive_normalized()
    factor = prim.leading_coeff_grlex() / _lead_coeff(bottom)
    return top * factor, bottom * factor


def integrand_to_rhs(op, f_num, f_den):
    """Convert an integrand num/den into the polynomial right-hand side
    v^2 * den(d) * f / gcd(v, tilde(v)); raises if the result is not a
    polynomial (the chosen denominator v is insufficient)."""
    if f_den.is_zero():
        raise ValueError("zero denominator in integrand")
    numerator = op.v * op.v * op.deriv.den * f_num
    denominator = op.g * f_den
    try:
        return divexact_laurent(numerator, denominator)
    except ValueError:
        raise ValueError(
            "denominator v insufficient: the converted right-hand side is "
            "not a polynomial") from None


@dataclass
class HeuristicBounds:
    """The four classical degree bound heuristics, evaluated literally."""
    partial_elementary: list   # per-variable bound on deg_{t_i}(u)
    total_bronstein: object    # total degree bound
    total_pmint: object        # total degree bound
    partial_parrisch: list     # per-variable bound on deg_{t_i}(u)

    def violated_by(self, u):
        """Which of the four bounds the candidate numerator u violates."""
        out = []
        if any(u.degree_in(i) > b for i, b in enumerate(self.partial_elementary)):
            out.append("partial_elementary")
        if u.total_degree() > self.total_bronstein:
            out.append("total_bronstein")
        if u.total_degree() > self.total_pmint:
            out.append("total_pmint")
        if any(u.degree_in(i) > b for i, b in enumerate(self.partial_parrisch)):
            out.append("partial_parrisch")
        return out


def _deg_rational(num, den, i):
    """Partial degree of a rational function num/den in t_i."""
    if num.is_zero():
        return NEG_INF
    return num.degree_in(i) - den.degree_in(i)


def heuristic_bounds(f_num, f_den, v, deriv):
    """Evaluate the four standard heuristics for the integrand num/den and
    denominator candidate v.  deg(0) = -inf throughout so max() behaves."""
    if f_den.is_zero() or v.is_zero():
        raise ValueError("zero denominator or zero v")
    n = deriv.n
    partial_elem = []
    for i in range(n):
        d_dti = _deg_rational(*deriv.derivs[i], i)
        partial_elem.append(
            1 + max(f_num.degree_in(i), f_den.degree_in(i)) - min(1, d_dti))
    deg_tilde_max = max(t.total_degree() for t in deriv.tilde)
    total_bro = 1 + f_num.total_degree() + max(0, deriv.den.total_degree()
                                               - deg_tilde_max)
    total_pmint = (1 + _pmint_term(v, f_den, deriv)
                   + max(f_num.total_degree(), f_den.total_degree()))
    partial_par = []
    den_d = deriv.den
    g2 = poly_gcd(den_d, f_den)
    den_over = divexact_laurent(den_d, g2)
    for i in range(n):
        partial_par.append(
            1 + max(v.degree_in(i), den_over.degree_in(i) + f_num.degree_in(i)))
    return HeuristicBounds(partial_elem, total_bro, total_pmint, partial_par)


def _pmint_term(v, f_den, deriv):
    """deg(v / gcd(den f, tilde(den f))) for the pmint-style bound."""
    tilde_fden = deriv.tilde_derivative(f_den)
    if tilde_fden.is_zero():
        g = f_den * (Fraction(1) / _lead_coeff(f_den))
    else:
        g = poly_gcd(f_den, tilde_fden)
    return divexact_laurent(v, poly_gcd(v, g)).total_degree()


def homogeneous_weights(p):
    """Basis of the rational weight vectors w for which p is w-homogeneous:
    the kernel of the matrix with rows alpha - alpha0 over the t-support."""
    if p.is_zero():
        raise ValueError("homogeneous_weights of the zero polynomial")
    exps = sorted(p.terms)
    alpha0 = exps[0]
    rows = [[Fraction(a - b) for a, b in zip(e, alpha0)] for e in exps[1:]]
    rows = [r for r in rows if any(r)]
    return [tuple(v) for v in nullspace(rows, p.nvars)]


def is_homogeneous(p, w):
    """Whether all support monomials of p share the same w-degree."""
    if p.is_zero():
        return True
    degs = {sum(Fraction(wi) * ei for wi, ei in zip(w, e)) for e in p.terms}
    return len(degs) == 1

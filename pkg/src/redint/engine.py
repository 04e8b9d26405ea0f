"""Normal forms with preimage accumulation and solving of the main problem.

Reducing a polynomial f by a reduction system maintains the exact additive
decomposition f = L(u) + r; when the system is complete and the order
Noetherian, r = 0 if and only if f lies in the image of L, and u is the
polynomial sought by the integration procedure.  A right-hand side with
undetermined constants f0 + c1 f1 + ... + cm fm is handled by reducing every
fi to its normal form and solving the resulting linear system on the
monomial coefficients exactly.

An independent brute-force solver (undetermined coefficients over a finite
candidate monomial set) is included as an oracle for tests and minimality
arguments; it never touches the reduction path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .diffop import apply_L, apply_derivation_rational
from .linalg import solve_linear
from .poly import LaurentPoly, leading_data
from .rules import reduce_poly_step


@dataclass
class NormalFormResult:
    remainder: LaurentPoly
    preimage: LaurentPoly
    step_count: int
    budget_exhausted: bool = False


def normal_form(f, system, step_budget=10_000):
    """Reduce f to an irreducible remainder, largest reducible monomial
    first, collecting the preimage so that f = L(preimage) + remainder."""
    if not (f.has_constant_coeffs() and f.is_ordinary()):
        raise ValueError("normal_form input must be an ordinary polynomial")
    order = system.order
    r = f
    u = LaurentPoly.zero(f.nvars)
    steps = 0
    while True:
        target = None
        rule = None
        for alpha in sorted(r.terms, key=order.key, reverse=True):
            applicable = system.rules_applicable(alpha)
            if applicable:
                target = alpha
                rule = applicable[0]
                break
        if target is None:
            return NormalFormResult(r, u, steps)
        if steps >= step_budget:
            return NormalFormResult(r, u, steps, budget_exhausted=True)
        r, delta = reduce_poly_step(r, rule, target)
        u += delta
        steps += 1


@dataclass
class MainProblemSolution:
    solvable: bool
    constants: list                 # particular c in Q^m (empty if m = 0)
    homogeneous_basis: list         # basis of the c-directions fixing nothing
    preimage: LaurentPoly           # u with L(u) = f0 + sum c_i f_i
    remainder: LaurentPoly          # zero when solvable; else the residual
    normal_forms: list = field(default_factory=list)
    budget_exhausted: bool = False


def solve_main_problem(f0, f_list, system, step_budget=10_000):
    """Find constants c and a polynomial u with L(u) = f0 + sum c_i f_i.

    Reduces every f_i to its normal form r_i and solves r0 + sum c_i r_i = 0
    on monomial coefficients.  When inconsistent, returns solvable=False and
    the nonzero residual r0 reduced modulo span{r1..rm} as a certificate."""
    nf0 = normal_form(f0, system, step_budget)
    nfs = [normal_form(fi, system, step_budget) for fi in f_list]
    exhausted = nf0.budget_exhausted or any(nf.budget_exhausted for nf in nfs)
    support = sorted(set(nf0.remainder.terms)
                     | {e for nf in nfs for e in nf.remainder.terms})
    m = len(f_list)
    if not support:
        u = nf0.preimage
        return MainProblemSolution(
            True, [Fraction(0)] * m,
            [[Fraction(1) if i == j else Fraction(0) for j in range(m)]
             for i in range(m)],
            u, LaurentPoly.zero(f0.nvars), [nf0] + nfs, exhausted)
    rows = []
    rhs = []
    for e in support:
        rows.append([nf.remainder.coeff(e).constant_value() for nf in nfs])
        rhs.append(-nf0.remainder.coeff(e).constant_value())
    solved = solve_linear(rows, rhs)
    if solved is None:
        residual = _residual(nf0.remainder, [nf.remainder for nf in nfs], support)
        return MainProblemSolution(False, [], [], LaurentPoly.zero(f0.nvars),
                                   residual, [nf0] + nfs, exhausted)
    constants, basis = solved
    u = nf0.preimage
    for c, nf in zip(constants, nfs):
        u += nf.preimage * c
    return MainProblemSolution(True, constants, basis, u,
                               LaurentPoly.zero(f0.nvars), [nf0] + nfs,
                               exhausted)


def _residual(r0, rs, support):
    """r0 reduced modulo the span of rs: the certificate of insolvability."""
    vecs = [[r.coeff(e).constant_value() for e in support] for r in rs]
    target = [r0.coeff(e).constant_value() for e in support]
    # orthogonal-free elimination: reduce target by a row echelon of vecs
    basis = []
    for v in vecs:
        v = list(v)
        for pivot_idx, pivot in basis:
            if v[pivot_idx]:
                f = v[pivot_idx] / pivot[pivot_idx]
                v = [a - f * b for a, b in zip(v, pivot)]
        nz = next((i for i, a in enumerate(v) if a), None)
        if nz is not None:
            basis.append((nz, v))
    t = list(target)
    for pivot_idx, pivot in basis:
        if t[pivot_idx]:
            f = t[pivot_idx] / pivot[pivot_idx]
            t = [a - f * b for a, b in zip(t, pivot)]
    out = LaurentPoly.zero(r0.nvars)
    for e, c in zip(support, t):
        out += LaurentPoly.monomial(r0.nvars, e, c)
    return out


def verify_integral(deriv, u, v, f_num, f_den):
    """Exact check that d(u/v) equals f_num/f_den as rational functions."""
    if v.is_zero() or f_den.is_zero():
        raise ValueError("zero denominator")
    dn, dd = apply_derivation_rational(deriv, u, v)
    return dn * f_den == f_num * dd


def oracle_solve(op, f, candidate_monomials):
    """Solve L(u) = f by undetermined coefficients over the candidate
    monomial set; returns u or None.  Independent of the reduction path."""
    candidates = sorted(set(tuple(e) for e in candidate_monomials))
    n = op.deriv.n
    images = [apply_L(op, LaurentPoly.monomial(n, e)) for e in candidates]
    support = sorted(set(f.terms) | {e for im in images for e in im.terms})
    rows = []
    rhs = []
    for e in support:
        rows.append([im.coeff(e).constant_value() for im in images])
        rhs.append(f.coeff(e).constant_value())
    if not support:
        return LaurentPoly.zero(n)
    solved = solve_linear(rows, rhs)
    if solved is None:
        return None
    coeffs, _ = solved
    u = LaurentPoly.zero(n)
    for e, c in zip(candidates, coeffs):
        u += LaurentPoly.monomial(n, e, c)
    return u

"""Exact sparse arithmetic for parametric Laurent polynomials.

Two layers of polynomials are used throughout the package:

  ParamPoly    polynomial in the exponent variables x1..xk over Q, stored as
               a dict mapping exponent tuples (k nonnegative ints) to nonzero
               Fraction coefficients.
  LaurentPoly  finite sum of t-monomials with ParamPoly coefficients; the
               t-exponents live in Z^n and may be negative.

Both are immutable by convention: no method mutates self, every operation
returns a fresh canonical value (no stored zero terms).  Equality is
structural.  The zero polynomial has an empty term map.

Monomial orders are given by invertible rational matrices: t^a < t^b iff the
first nonzero entry of M*(b-a) is positive, equivalently M*a precedes M*b
lexicographically.  The leading monomial of 0 is represented by None, a
sentinel that compares below every monomial.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, inf
from typing import Iterable, Sequence, Union

Frac = Fraction
NEG_INF = -inf

Exponent = tuple  # tuple[int, ...]
Scalar = Union[Fraction, int]


def _grlex_key(exp):
    """Sort key for graded-lex descending output (negate for ascending sorts)."""
    return (sum(exp), exp)


class ParseError(ValueError):
    """Syntax error in polynomial text, with position information."""

    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


# ---------------------------------------------------------------------------
# ParamPoly
# ---------------------------------------------------------------------------

class ParamPoly:
    """Polynomial in x1..xk over exact rationals, sparse representation."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        else:
            self.terms = {e: c for e, c in terms.items() if c != 0}

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def const(cls, nvars, value):
        value = Fraction(value)
        if value == 0:
            return cls(nvars)
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars, index, power=1):
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[index] = power
        return cls(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, nvars, exp, coeff=1):
        coeff = Fraction(coeff)
        if coeff == 0:
            return cls(nvars)
        return cls(nvars, {tuple(exp): coeff})

    # -- basic queries -------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(all(e == 0 for e in exp) for exp in self.terms)

    def constant_value(self):
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self):
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def degree_in(self, index):
        if not self.terms:
            return NEG_INF
        return max(e[index] for e in self.terms)

    def variables_present(self):
        present = set()
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    present.add(i)
        return present

    def sorted_terms(self):
        """Terms in canonical order: graded-lex descending on exponents."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_coeff_grlex(self):
        if not self.terms:
            return Fraction(0)
        exp = max(self.terms, key=_grlex_key)
        return self.terms[exp]

    # -- ring operations -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, ParamPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == ParamPoly.const(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __neg__(self):
        return ParamPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return ParamPoly(self.nvars, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ParamPoly.zero(self.nvars)
            return ParamPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return ParamPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a ParamPoly")
        result = ParamPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def _coerce(self, other):
        if isinstance(other, ParamPoly):
            if other.nvars != self.nvars:
                raise ValueError("mixed variable counts")
            return other
        if isinstance(other, (int, Fraction)):
            return ParamPoly.const(self.nvars, other)
        raise TypeError(f"cannot combine ParamPoly with {type(other)!r}")

    # -- evaluation and substitution ------------------------------------------

    def evaluate(self, point):
        """Evaluate at a point (sequence of rationals/ints)."""
        if len(point) != self.nvars:
            raise ValueError("point has wrong dimension")
        if all(type(p) is int for p in point):
            # integer fast path: accumulate num/den without Fraction churn
            num, den = 0, 1
            for exp, coeff in self.terms.items():
                v = 1
                for p, e in zip(point, exp):
                    if e:
                        v *= p ** e
                cn, cd = coeff.numerator, coeff.denominator
                if cd == 1:
                    num += cn * v * den
                else:
                    num = num * cd + cn * v * den
                    den *= cd
            return Fraction(num, den)
        point = [Fraction(p) for p in point]
        total = Fraction(0)
        for exp, coeff in self.terms.items():
            val = coeff
            for p, e in zip(point, exp):
                if e:
                    val *= p ** e
            total += val
        return total

    def subs_var(self, index, value):
        """Substitute x_index := value (a rational constant)."""
        value = Fraction(value)
        out = ParamPoly.zero(self.nvars)
        for exp, coeff in self.terms.items():
            e = exp[index]
            if e:
                coeff = coeff * value ** e
                exp = exp[:index] + (0,) + exp[index + 1:]
            if coeff:
                out += ParamPoly.monomial(self.nvars, exp, coeff)
        return out

    def subs_var_poly(self, index, replacement):
        """Substitute x_index := replacement (a ParamPoly)."""
        out = ParamPoly.zero(self.nvars)
        for exp, coeff in self.terms.items():
            e = exp[index]
            rest = exp[:index] + (0,) + exp[index + 1:]
            term = ParamPoly.monomial(self.nvars, rest, coeff)
            if e:
                term = term * replacement ** e
            out += term
        return out

    def subs_shift(self, beta):
        """Return p(x + beta) for an integer vector beta (binomial expansion)."""
        if all(b == 0 for b in beta):
            return self
        out = {}
        for exp, coeff in self.terms.items():
            # expand prod_i (x_i + beta_i)^{e_i}
            partial = {(0,) * self.nvars: coeff}
            for i, e in enumerate(exp):
                if e == 0:
                    continue
                b = beta[i]
                if b == 0:
                    partial = {pe[:i] + (pe[i] + e,) + pe[i + 1:]: pc
                               for pe, pc in partial.items()}
                    continue
                expanded = {}
                for k in range(e + 1):
                    c = comb(e, k) * Fraction(b) ** (e - k)
                    if c == 0:
                        continue
                    for pe, pc in partial.items():
                        ne = pe[:i] + (pe[i] + k,) + pe[i + 1:]
                        s = expanded.get(ne, 0) + pc * c
                        if s:
                            expanded[ne] = s
                        else:
                            del expanded[ne]
                partial = expanded
            for pe, pc in partial.items():
                s = out.get(pe, 0) + pc
                if s:
                    out[pe] = s
                else:
                    del out[pe]
        return ParamPoly(self.nvars, out)

    # -- exact division -------------------------------------------------------

    def divexact(self, divisor):
        """Exact division; raises ValueError if the division is not exact."""
        if isinstance(divisor, (int, Fraction)):
            divisor = Fraction(divisor)
            if divisor == 0:
                raise ZeroDivisionError("division by zero")
            return ParamPoly(self.nvars, {e: c / divisor for e, c in self.terms.items()})
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if divisor.is_constant():
            return self.divexact(divisor.constant_value())
        rem = dict(self.terms)
        quo = {}
        dexp = max(divisor.terms, key=_grlex_key)
        dc = divisor.terms[dexp]
        while rem:
            rexp = max(rem, key=_grlex_key)
            qexp = tuple(a - b for a, b in zip(rexp, dexp))
            if any(e < 0 for e in qexp):
                raise ValueError("inexact polynomial division")
            qc = rem[rexp] / dc
            quo[qexp] = qc
            for e2, c2 in divisor.terms.items():
                e = tuple(a + b for a, b in zip(qexp, e2))
                s = rem.get(e, 0) - qc * c2
                if s:
                    rem[e] = s
                else:
                    rem.pop(e, None)
        return ParamPoly(self.nvars, quo)

    def divides(self, other):
        try:
            other.divexact(self)
            return True
        except ValueError:
            return False

    # -- normalization --------------------------------------------------------

    def primitive_normalized(self):
        """Scale by a rational so content is 1 and the graded-lex leading
        coefficient is positive."""
        if not self.terms:
            return self
        nums = [c.numerator for c in self.terms.values()]
        dens = [c.denominator for c in self.terms.values()]
        g = 0
        for v in nums:
            g = _gcd_int(g, v)
        l = 1
        for v in dens:
            l = l * v // _gcd_int(l, v)
        scale = Fraction(l, g)
        if self.leading_coeff_grlex() < 0:
            scale = -scale
        return self * scale

    def __repr__(self):
        return f"ParamPoly({self.to_str([f'x{i+1}' for i in range(self.nvars)])!r})"

    def to_str(self, var_names):
        return _terms_to_str(
            [(exp, (), coeff) for exp, coeff in self.sorted_terms()], var_names, ())


def _gcd_int(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# Multivariate gcd over Q (content / primitive part with subresultant PRS)
# ---------------------------------------------------------------------------

def _pp_to_univar(p, var):
    """Recursive view: dict degree-in-var -> ParamPoly coefficient (var-free)."""
    out = {}
    for exp, coeff in p.terms.items():
        d = exp[var]
        rest = exp[:var] + (0,) + exp[var + 1:]
        cur = out.get(d)
        mono = ParamPoly.monomial(p.nvars, rest, coeff)
        out[d] = mono if cur is None else cur + mono
    return {d: c for d, c in out.items() if not c.is_zero()}


def _univar_to_pp(d, var, nvars):
    out = ParamPoly.zero(nvars)
    for deg, coeff in d.items():
        shift = ParamPoly.variable(nvars, var, deg) if deg else ParamPoly.const(nvars, 1)
        out += coeff * shift
    return out


def _prem(f, g, var, nvars):
    """Pseudo-remainder of f by g, both univariate dicts in var."""
    df = max(f) if f else -1
    dg = max(g)
    lg = g[dg]
    r = dict(f)
    while r and max(r) >= dg:
        dr = max(r)
        lr = r[dr]
        # r := lg*r - lr*x^(dr-dg)*g
        new = {}
        for d, c in r.items():
            new[d] = c * lg
        for d, c in g.items():
            e = d + dr - dg
            s = new.get(e, ParamPoly.zero(nvars)) - lr * c
            new[e] = s
        r = {d: c for d, c in new.items() if not c.is_zero()}
    return r


def param_gcd(a, b):
    """Gcd of two ParamPolys over Q, normalized primitive with positive
    graded-lex leading coefficient.  gcd(0, 0) = 0."""
    if a.is_zero():
        return b.primitive_normalized()
    if b.is_zero():
        return a.primitive_normalized()
    if a.is_constant() or b.is_constant():
        return ParamPoly.const(a.nvars, 1)
    avars = a.variables_present()
    bvars = b.variables_present()
    common = avars & bvars
    if not common:
        # no shared variable: over Q the gcd is trivial
        return ParamPoly.const(a.nvars, 1)
    var = max(common)
    fa = _pp_to_univar(a, var)
    fb = _pp_to_univar(b, var)
    conta = _content(fa)
    contb = _content(fb)
    ppa = {d: c.divexact(conta) for d, c in fa.items()}
    ppb = {d: c.divexact(contb) for d, c in fb.items()}
    cont_gcd = param_gcd(conta, contb)
    pp_gcd = _subresultant_gcd(ppa, ppb, var, a.nvars)
    return (cont_gcd * pp_gcd).primitive_normalized()


def _content(univar):
    cont = ParamPoly.zero(next(iter(univar.values())).nvars)
    for c in univar.values():
        cont = param_gcd(cont, c)
        if cont.is_constant():
            break
    return cont if not cont.is_zero() else cont


def _subresultant_gcd(f, g, var, nvars):
    """Gcd of primitive univariate-in-var polynomials via subresultant PRS."""
    if (max(f) if f else -1) < (max(g) if g else -1):
        f, g = g, f
    if not g:
        return _univar_to_pp(f, var, nvars)
    one = ParamPoly.const(nvars, 1)
    d = max(f) - max(g)
    beta = ParamPoly.const(nvars, (-1) ** (d + 1))
    psi = ParamPoly.const(nvars, -1)
    while True:
        r = _prem(f, g, var, nvars)
        if not r:
            pp = _primitive_part_univar(g, var, nvars)
            return pp
        if max(r) == 0:
            return one
        r = {deg: c.divexact(beta) for deg, c in r.items()}
        lc_g = g[max(g)]
        d_next = max(g) - max(r)
        f, g = g, r
        # psi := (-lc)^d * psi^(1-d), an exact division for d >= 2
        if d == 0:
            psi_new = psi
        elif d == 1:
            psi_new = -lc_g
        else:
            psi_new = ((-lc_g) ** d).divexact(psi ** (d - 1))
        psi = psi_new
        d = d_next
        beta = -lc_g * psi ** d


def _primitive_part_univar(g, var, nvars):
    cont = _content(g)
    pp = {d: c.divexact(cont) for d, c in g.items()}
    return _univar_to_pp(pp, var, nvars)


# ---------------------------------------------------------------------------
# LaurentPoly
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Laurent polynomial in t1..tn with ParamPoly coefficients in x1..xn."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        else:
            self.terms = {e: c for e, c in terms.items() if not c.is_zero()}

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def const(cls, nvars, value):
        return cls.monomial(nvars, (0,) * nvars, value)

    @classmethod
    def one(cls, nvars):
        return cls.const(nvars, 1)

    @classmethod
    def monomial(cls, nvars, exp, coeff=1):
        if isinstance(coeff, (int, Fraction)):
            coeff = ParamPoly.const(nvars, coeff)
        if coeff.is_zero():
            return cls(nvars)
        return cls(nvars, {tuple(exp): coeff})

    @classmethod
    def var(cls, nvars, index, power=1):
        exp = [0] * nvars
        exp[index] = power
        return cls.monomial(nvars, exp)

    @classmethod
    def from_const_dict(cls, nvars, d):
        return cls(nvars, {tuple(e): ParamPoly.const(nvars, c) for e, c in d.items()})

    # -- queries --------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_ordinary(self):
        """True if every t-exponent is nonnegative."""
        return all(all(e >= 0 for e in exp) for exp in self.terms)

    def has_constant_coeffs(self):
        return all(c.is_constant() for c in self.terms.values())

    def is_monomial(self):
        return len(self.terms) == 1

    def support(self):
        return set(self.terms)

    def coeff(self, exp):
        return self.terms.get(tuple(exp), ParamPoly.zero(self.nvars))

    def to_const_dict(self):
        """As dict exponent -> Fraction; raises if a coefficient is parametric."""
        return {e: c.constant_value() for e, c in self.terms.items()}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def num_terms(self):
        return len(self.terms)

    # -- ring operations ------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset((e, hash(c)) for e, c in self.terms.items())))

    def __neg__(self):
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return LaurentPoly(self.nvars, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ParamPoly)):
            if isinstance(other, (int, Fraction)) and other == 0:
                return LaurentPoly.zero(self.nvars)
            out = {}
            for e, c in self.terms.items():
                p = c * other
                if not p.is_zero():
                    out[e] = p
            return LaurentPoly(self.nvars, out)
        other = self._coerce(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                s = out.get(e)
                s = p if s is None else s + p
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
        return LaurentPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            (exp, coeff), = self.terms.items()
            if not coeff.is_constant():
                raise ValueError("negative power of a monomial with parametric coefficient")
            c = coeff.constant_value() ** k
            return LaurentPoly.monomial(self.nvars, tuple(e * k for e in exp), c)
        result = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError("mixed variable counts")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(self.nvars, other)
        if isinstance(other, ParamPoly):
            return LaurentPoly.monomial(self.nvars, (0,) * self.nvars, other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other)!r}")

    # -- substitution in the x variables --------------------------------------

    def substitute_x(self, alpha):
        """Instantiate the exponent variables at alpha; drops vanished terms."""
        out = {}
        for e, c in self.terms.items():
            v = c.evaluate(alpha)
            if v:
                out[e] = ParamPoly.const(self.nvars, v)
        return LaurentPoly(self.nvars, out)

    def subs_x_plus(self, beta):
        """Replace x by x + beta in every coefficient (no t-shift)."""
        out = {}
        for e, c in self.terms.items():
            p = c.subs_shift(beta)
            if not p.is_zero():
                out[e] = p
        return LaurentPoly(self.nvars, out)

    def mul_tpow(self, beta):
        """Multiply by the Laurent monomial t^beta."""
        return LaurentPoly(
            self.nvars,
            {tuple(a + b for a, b in zip(e, beta)): c for e, c in self.terms.items()})

    def shift_x(self, beta):
        """Return P(x - beta, t) / t^beta."""
        neg = tuple(-b for b in beta)
        return self.subs_x_plus(neg).mul_tpow(neg)

    # -- degrees --------------------------------------------------------------

    def weighted_degree(self, w):
        """Max of w . alpha over the t-support; -inf for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(sum(Fraction(wi) * ei for wi, ei in zip(w, e)) for e in self.terms)

    def degree_in(self, index):
        if not self.terms:
            return NEG_INF
        return max(e[index] for e in self.terms)

    def total_degree(self):
        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def __repr__(self):
        xs = [f"x{i+1}" for i in range(self.nvars)]
        ts = [f"t{i+1}" for i in range(self.nvars)]
        return f"LaurentPoly({poly_to_str(self, xs, ts)!r})"


# ---------------------------------------------------------------------------
# Monomial orders
# ---------------------------------------------------------------------------

class MonomialOrder:
    """Strict total order on Z^n induced by an invertible rational matrix."""

    __slots__ = ("matrix", "n", "noetherian")

    def __init__(self, matrix):
        rows = tuple(tuple(Fraction(v) for v in row) for row in matrix)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("order matrix must be square")
        if _det(rows) == 0:
            raise ValueError("order matrix must be invertible")
        self.matrix = rows
        self.n = n
        self.noetherian = all(self._column_positive(j) for j in range(n))

    def _column_positive(self, j):
        for row in self.matrix:
            if row[j] != 0:
                return row[j] > 0
        return False

    @classmethod
    def lex(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def key(self, exp):
        """Lexicographic sort key; larger key = larger monomial."""
        return tuple(sum(r * e for r, e in zip(row, exp)) for row in self.matrix)

    def compare(self, a, b):
        """-1, 0, or 1 as t^a <, =, > t^b.  None acts as the zero sentinel,
        below every monomial."""
        if a is None and b is None:
            return 0
        if a is None:
            return -1
        if b is None:
            return 1
        ka, kb = self.key(a), self.key(b)
        if ka < kb:
            return -1
        if ka > kb:
            return 1
        return 0

    def less(self, a, b):
        return self.compare(a, b) < 0

    def max_exponent(self, exps):
        best = None
        for e in exps:
            if best is None or self.compare(e, best) > 0:
                best = e
        return best

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.matrix == other.matrix

    def __repr__(self):
        return f"MonomialOrder({[[str(v) for v in row] for row in self.matrix]})"


def _det(rows):
    n = len(rows)
    m = [list(r) for r in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] / m[col][col]
            for c in range(col, n):
                m[r][c] -= factor * m[col][c]
    return det


# ---------------------------------------------------------------------------
# Leading data and truncations
# ---------------------------------------------------------------------------

class LeadingData:
    """Leading monomial (None for 0), leading coefficient, leading term."""

    __slots__ = ("lm", "lc", "lt")

    def __init__(self, lm, lc, lt):
        self.lm = lm
        self.lc = lc
        self.lt = lt


def leading_data(P, order):
    if P.is_zero():
        return LeadingData(None, ParamPoly.zero(P.nvars), LaurentPoly.zero(P.nvars))
    lm = order.max_exponent(P.terms)
    lc = P.terms[lm]
    return LeadingData(lm, lc, LaurentPoly(P.nvars, {lm: lc}))


def truncate_at(P, order, m):
    """Terms with exponent <= m under the order (m=None keeps nothing)."""
    if m is None:
        return LaurentPoly.zero(P.nvars)
    return LaurentPoly(P.nvars,
                       {e: c for e, c in P.terms.items() if order.compare(e, m) <= 0})


def truncate_below(P, order, m):
    """Terms with exponent strictly below m under the order."""
    if m is None:
        return LaurentPoly.zero(P.nvars)
    return LaurentPoly(P.nvars,
                       {e: c for e, c in P.terms.items() if order.compare(e, m) < 0})


def weighted_degree(P, w):
    return P.weighted_degree(w)


def order_compare(order, a, b):
    return order.compare(a, b)


# ---------------------------------------------------------------------------
# gcd of constant-coefficient ordinary Laurent polynomials
# ---------------------------------------------------------------------------

def poly_gcd(f, g):
    """Gcd of two ordinary polynomials in t with rational coefficients.

    Result is primitive with positive graded-lex leading coefficient.  The
    inputs must be free of the x variables and have nonnegative exponents."""
    for p in (f, g):
        if not p.has_constant_coeffs():
            raise ValueError("poly_gcd inputs must have constant coefficients")
        if not p.is_ordinary():
            raise ValueError("poly_gcd inputs must have nonnegative exponents")
    if f.is_zero() and g.is_zero():
        raise ValueError("poly_gcd(0, 0) is undefined")
    a = ParamPoly(f.nvars, f.to_const_dict())
    b = ParamPoly(g.nvars, g.to_const_dict())
    g_ = param_gcd(a, b)
    return LaurentPoly.from_const_dict(f.nvars, g_.terms)


def _min_exponents(f):
    """Componentwise minimum of the support exponents (None for 0)."""
    mins = None
    for e in f.terms:
        mins = e if mins is None else tuple(min(a, b) for a, b in zip(mins, e))
    return mins


def lcm_poly(f, g):
    """Lcm of ordinary constant-coefficient polynomials; preserves the overall
    normalization of f (no sign or content normalization is applied)."""
    if f.is_zero() or g.is_zero():
        raise ValueError("lcm of zero polynomial")
    g_ = poly_gcd(f, g)
    cof = divexact_laurent(g, g_)
    return f * cof


def divexact_laurent(f, divisor):
    """Exact division of constant-coefficient Laurent polynomials by an
    ordinary polynomial divisor; raises ValueError if not exact."""
    if divisor.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    shift_f = _min_exponents(f)
    if shift_f is None:
        return LaurentPoly.zero(f.nvars)
    shift_d = _min_exponents(divisor)
    f0 = f.mul_tpow(tuple(-s for s in shift_f))
    d0 = divisor.mul_tpow(tuple(-s for s in shift_d))
    a = ParamPoly(f.nvars, f0.to_const_dict())
    b = ParamPoly(divisor.nvars, d0.to_const_dict())
    q = a.divexact(b)
    out_shift = tuple(sf - sd for sf, sd in zip(shift_f, shift_d))
    return LaurentPoly.from_const_dict(f.nvars, q.terms).mul_tpow(out_shift)


# ---------------------------------------------------------------------------
# Parsing and printing
# ---------------------------------------------------------------------------

def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if ch == "#":
            break
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("INT", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("NAME", text[i:j], i))
            i = j
            continue
        if ch in "+-*^/()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("EOF", "", n))
    return tokens


class _Parser:
    """Recursive-descent parser for the polynomial expression grammar.

    expr   := ['-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := rational | NAME ['^' ['-'] INT] | '(' expr ')'

    A leading unary minus is accepted as a convenience; the canonical printer
    only emits it through a signed rational coefficient."""

    def __init__(self, tokens, xvars, tvars):
        self.tokens = tokens
        self.pos = 0
        self.xindex = {name: i for i, name in enumerate(xvars)}
        self.tindex = {name: i for i, name in enumerate(tvars)}
        self.nx = len(xvars)
        self.nt = len(tvars)

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1]!r}", tok[2])
        return tok

    def parse_expr(self):
        negate = False
        if self.peek()[0] == "-":
            self.next()
            negate = True
        acc = self.parse_term()
        if negate:
            acc = _fterm_neg(acc)
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            term = self.parse_term()
            if op == "-":
                term = _fterm_neg(term)
            acc = _fterm_add(acc, term)
        return acc

    def parse_term(self):
        acc = self.parse_factor()
        while self.peek()[0] == "*":
            self.next()
            acc = _fterm_mul(acc, self.parse_factor())
        return acc

    def parse_factor(self):
        tok = self.peek()
        if tok[0] == "INT":
            return self._parse_rational()
        if tok[0] == "NAME":
            self.next()
            name = tok[1]
            power = 1
            if self.peek()[0] == "^":
                self.next()
                sign = 1
                if self.peek()[0] == "-":
                    self.next()
                    sign = -1
                power = sign * int(self.expect("INT")[1])
            if name in self.xindex:
                if power < 0:
                    raise ParseError(f"negative exponent on parameter {name}", tok[2])
                xexp = [0] * self.nx
                xexp[self.xindex[name]] = power
                return {(tuple(xexp), (0,) * self.nt): Fraction(1)}
            if name in self.tindex:
                texp = [0] * self.nt
                texp[self.tindex[name]] = power
                return {((0,) * self.nx, tuple(texp)): Fraction(1)}
            raise ParseError(f"unknown variable {name!r}", tok[2])
        if tok[0] == "(":
            self.next()
            inner = self.parse_expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {tok[1]!r}", tok[2])

    def _parse_rational(self):
        tok = self.expect("INT")
        value = Fraction(int(tok[1]))
        # a '/' directly followed by an integer is part of the rational
        if self.peek()[0] == "/" and self.tokens[self.pos + 1][0] == "INT":
            self.next()
            den = int(self.expect("INT")[1])
            if den == 0:
                raise ParseError("zero denominator in rational", tok[2])
            value /= den
        return {((0,) * self.nx, (0,) * self.nt): value}


def _fterm_neg(d):
    return {k: -v for k, v in d.items()}


def _fterm_add(a, b):
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _fterm_mul(a, b):
    out = {}
    for (xa, ta), ca in a.items():
        for (xb, tb), cb in b.items():
            k = (tuple(p + q for p, q in zip(xa, xb)),
                 tuple(p + q for p, q in zip(ta, tb)))
            s = out.get(k, 0) + ca * cb
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def parse_poly(text, xvars, tvars):
    """Parse text into a LaurentPoly over tvars with ParamPoly coefficients
    over xvars.  Raises ParseError on bad syntax or unknown names."""
    parser = _Parser(_tokenize(text), list(xvars), list(tvars))
    d = parser.parse_expr()
    tok = parser.peek()
    if tok[0] != "EOF":
        raise ParseError(f"trailing input {tok[1]!r}", tok[2])
    return _assemble(d, len(xvars), len(tvars))


def parse_poly_partial(text, xvars, tvars):
    """Like parse_poly but stops at the first token that cannot extend the
    expression; returns (poly, remaining_token_position)."""
    tokens = _tokenize(text)
    parser = _Parser(tokens, list(xvars), list(tvars))
    d = parser.parse_expr()
    tok = parser.peek()
    return _assemble(d, len(xvars), len(tvars)), tok[2]


def _assemble(d, nx, nt):
    nvars = max(nx, nt) if (nx or nt) else 0
    terms = {}
    for (xexp, texp), coeff in d.items():
        xfull = tuple(xexp) + (0,) * (nvars - nx)
        tfull = tuple(texp) + (0,) * (nvars - nt)
        cur = terms.get(tfull)
        mono = ParamPoly.monomial(nvars, xfull, coeff)
        terms[tfull] = mono if cur is None else cur + mono
    return LaurentPoly(nvars, terms)


def parse_param(text, xvars):
    """Parse a ParamPoly (x variables only)."""
    n = len(xvars)
    p = parse_poly(text, xvars, [])
    if p.is_zero():
        return ParamPoly.zero(n)
    (texp, coeff), = p.terms.items()
    return ParamPoly(n, {e[:n] if n else e: c for e, c in coeff.terms.items()})


def _frac_str(q):
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _terms_to_str(triples, xnames, tnames):
    """Render [(xexp, texp, coeff)] in canonical form."""
    if not triples:
        return "0"
    parts = []
    for i, (xexp, texp, coeff) in enumerate(triples):
        neg = coeff < 0
        mag = -coeff if neg else coeff
        factors = []
        for name, e in list(zip(xnames, xexp)) + list(zip(tnames, texp)):
            if e == 0:
                continue
            factors.append(name if e == 1 else f"{name}^{e}")
        if mag != 1 or not factors:
            factors.insert(0, _frac_str(mag))
        body = "*".join(factors)
        if i == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


def poly_to_str(P, xnames, tnames):
    """Canonical text form of a LaurentPoly; graded-lex descending on the
    t-exponents, parametric coefficients parenthesized."""
    if P.is_zero():
        return "0"
    chunks = []
    for i, (texp, coeff) in enumerate(P.sorted_terms()):
        tfactors = []
        for name, e in zip(tnames, texp):
            if e == 0:
                continue
            tfactors.append(name if e == 1 else f"{name}^{e}")
        cterms = coeff.sorted_terms()
        if len(cterms) == 1:
            (xexp, q), = cterms
            neg = q < 0
            mag = -q if neg else q
            factors = []
            for name, e in zip(xnames, xexp):
                if e == 0:
                    continue
                factors.append(name if e == 1 else f"{name}^{e}")
            factors += tfactors
            if mag != 1 or not factors:
                factors.insert(0, _frac_str(mag))
            body = "*".join(factors)
            sign = neg
        else:
            inner = _terms_to_str([(xe, (), q) for xe, q in cterms], xnames, ())
            body = "*".join([f"({inner})"] + tfactors)
            sign = False
        if i == 0:
            chunks.append(f"-{body}" if sign else body)
        else:
            chunks.append(f" - {body}" if sign else f" + {body}")
    return "".join(chunks)

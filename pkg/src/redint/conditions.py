"""Logical conditions over N^n and a sound three-valued decision procedure.

A condition is a tree of polynomial sign constraints on the exponent
variables x1..xn, combined with and/or/not.  Satisfiability over N^n is
undecidable in general, so the solver answers SAT (with a verified witness),
UNSAT (proved), or UNKNOWN.  Callers that ask existential questions treat
UNKNOWN as "assume a solution exists"; callers that need a proved implication
treat UNKNOWN as "not proved".  This keeps every executed reduction sound
while never rejecting a satisfiable condition.

The solver normalizes to DNF (size-capped) and decides each conjunct by:

  1. constant folding and sign bounds (all-nonnegative / all-nonpositive
     coefficient tests give exact value ranges over N^n),
  2. contradiction of sign constraints on syntactically identical polynomials,
  3. pinning variables from univariate equations with a unique root in N,
  4. eliminating a variable from a multivariate linear equation when its
     coefficient is +-1 and the rest of the equation is integral,
  5. exact per-variable analysis of the remaining univariate constraints
     (roots and eventual sign via the Cauchy bound),
  6. a finite box search for a witness otherwise; no witness leaves UNKNOWN.

Steps 1-5 are exact; only step 6 can end in UNKNOWN.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .poly import ParamPoly, _frac_str

RELS = ("=0", "!=0", ">=0", ">0", "<=0", "<0")

_NEGATE = {"=0": "!=0", "!=0": "=0", ">=0": "<0", "<0": ">=0",
           ">0": "<=0", "<=0": ">0"}
_FLIP = {"=0": "=0", "!=0": "!=0", ">=0": "<=0", "<=0": ">=0",
         ">0": "<0", "<0": ">0"}
_REL_SYM = {"=0": "=", "!=0": "!=", ">=0": ">=", ">0": ">",
            "<=0": "<=", "<0": "<"}
_SYM_REL = {v: k for k, v in _REL_SYM.items()}
# signs {-1, 0, 1} of the polynomial value admitted by each relation
_REL_SIGNS = {"=0": {0}, "!=0": {-1, 1}, ">=0": {0, 1}, ">0": {1},
              "<=0": {-1, 0}, "<0": {-1}}


def _rel_holds(value, rel):
    if rel == "=0":
        return value == 0
    if rel == "!=0":
        return value != 0
    if rel == ">=0":
        return value >= 0
    if rel == ">0":
        return value > 0
    if rel == "<=0":
        return value <= 0
    return value < 0


class Condition:
    """Base class; instances are immutable trees."""

    __slots__ = ()


class TrueCond(Condition):
    __slots__ = ()

    def __repr__(self):
        return "TRUE"

    def __eq__(self, other):
        return isinstance(other, TrueCond)

    def __hash__(self):
        return hash("TRUE")


class FalseCond(Condition):
    __slots__ = ()

    def __repr__(self):
        return "FALSE"

    def __eq__(self, other):
        return isinstance(other, FalseCond)

    def __hash__(self):
        return hash("FALSE")


TRUE = TrueCond()
FALSE = FalseCond()


class Atom(Condition):
    __slots__ = ("poly", "rel")

    def __init__(self, poly, rel):
        if rel not in RELS:
            raise ValueError(f"unknown relation {rel!r}")
        self.poly = poly
        self.rel = rel

    def __eq__(self, other):
        return (isinstance(other, Atom) and self.rel == other.rel
                and self.poly == other.poly)

    def __hash__(self):
        return hash((self.rel, self.poly))

    def __repr__(self):
        names = [f"x{i+1}" for i in range(self.poly.nvars)]
        return f"Atom({self.poly.to_str(names)} {_REL_SYM[self.rel]} 0)"


class And(Condition):
    __slots__ = ("children",)

    def __init__(self, children):
        self.children = tuple(children)

    def __eq__(self, other):
        return isinstance(other, And) and self.children == other.children

    def __hash__(self):
        return hash(("and", self.children))

    def __repr__(self):
        return "And(" + ", ".join(map(repr, self.children)) + ")"


class Or(Condition):
    __slots__ = ("children",)

    def __init__(self, children):
        self.children = tuple(children)

    def __eq__(self, other):
        return isinstance(other, Or) and self.children == other.children

    def __hash__(self):
        return hash(("or", self.children))

    def __repr__(self):
        return "Or(" + ", ".join(map(repr, self.children)) + ")"


class Not(Condition):
    __slots__ = ("child",)

    def __init__(self, child):
        self.child = child

    def __eq__(self, other):
        return isinstance(other, Not) and self.child == other.child

    def __hash__(self):
        return hash(("not", self.child))

    def __repr__(self):
        return f"Not({self.child!r})"


# -- smart constructors -------------------------------------------------------

def atom(poly, rel):
    """Atom with the polynomial scaled primitive; constants fold to
    TRUE/FALSE, and a sign flip of the polynomial flips the relation."""
    if poly.is_zero():
        return TRUE if _rel_holds(0, rel) else FALSE
    if poly.is_constant():
        return TRUE if _rel_holds(poly.constant_value(), rel) else FALSE
    flipped = poly.leading_coeff_grlex() < 0
    normalized = poly.primitive_normalized()
    return Atom(normalized, _FLIP[rel] if flipped else rel)


def cond_and(*conds):
    flat = []
    for c in conds:
        if isinstance(c, FalseCond):
            return FALSE
        if isinstance(c, TrueCond):
            continue
        if isinstance(c, And):
            flat.extend(c.children)
        else:
            flat.append(c)
    if not flat:
        return TRUE
    if len(flat) == 1:
        return flat[0]
    return And(flat)


def cond_or(*conds):
    flat = []
    for c in conds:
        if isinstance(c, TrueCond):
            return TRUE
        if isinstance(c, FalseCond):
            continue
        if isinstance(c, Or):
            flat.extend(c.children)
        else:
            flat.append(c)
    if not flat:
        return FALSE
    if len(flat) == 1:
        return flat[0]
    return Or(flat)


def cond_not(cond):
    if isinstance(cond, TrueCond):
        return FALSE
    if isinstance(cond, FalseCond):
        return TRUE
    if isinstance(cond, Not):
        return cond.child
    return Not(cond)


# -- structural operations ----------------------------------------------------

def cond_eval(cond, alpha):
    """Evaluate at a point of N^n (standard boolean semantics)."""
    if isinstance(cond, TrueCond):
        return True
    if isinstance(cond, FalseCond):
        return False
    if isinstance(cond, Atom):
        return _rel_holds(cond.poly.evaluate(alpha), cond.rel)
    if isinstance(cond, And):
        return all(cond_eval(c, alpha) for c in cond.children)
    if isinstance(cond, Or):
        return any(cond_eval(c, alpha) for c in cond.children)
    if isinstance(cond, Not):
        return not cond_eval(cond.child, alpha)
    raise TypeError(f"not a condition: {cond!r}")


def cond_subs_shift(cond, beta):
    """Substitute x := x + beta in every atom (beta an integer vector)."""
    if isinstance(cond, (TrueCond, FalseCond)):
        return cond
    if isinstance(cond, Atom):
        return atom(cond.poly.subs_shift(beta), cond.rel)
    if isinstance(cond, And):
        return cond_and(*(cond_subs_shift(c, beta) for c in cond.children))
    if isinstance(cond, Or):
        return cond_or(*(cond_subs_shift(c, beta) for c in cond.children))
    if isinstance(cond, Not):
        return cond_not(cond_subs_shift(cond.child, beta))
    raise TypeError(f"not a condition: {cond!r}")


def to_nnf(cond, negate=False):
    """Negation normal form: Not pushed into the atoms."""
    if isinstance(cond, TrueCond):
        return FALSE if negate else TRUE
    if isinstance(cond, FalseCond):
        return TRUE if negate else FALSE
    if isinstance(cond, Atom):
        return Atom(cond.poly, _NEGATE[cond.rel]) if negate else cond
    if isinstance(cond, Not):
        return to_nnf(cond.child, not negate)
    if isinstance(cond, And):
        parts = [to_nnf(c, negate) for c in cond.children]
        return cond_or(*parts) if negate else cond_and(*parts)
    if isinstance(cond, Or):
        parts = [to_nnf(c, negate) for c in cond.children]
        return cond_and(*parts) if negate else cond_or(*parts)
    raise TypeError(f"not a condition: {cond!r}")


class _DnfOverflow(Exception):
    pass


def _to_dnf(cond, cap):
    """List of conjuncts (each a list of Atoms) for an NNF condition."""
    if isinstance(cond, TrueCond):
        return [[]]
    if isinstance(cond, FalseCond):
        return []
    if isinstance(cond, Atom):
        return [[cond]]
    if isinstance(cond, Or):
        out = []
        for c in cond.children:
            out.extend(_to_dnf(c, cap))
            if len(out) > cap:
                raise _DnfOverflow
        return out
    if isinstance(cond, And):
        out = [[]]
        for c in cond.children:
            branches = _to_dnf(c, cap)
            out = [a + b for a in out for b in branches]
            if len(out) > cap:
                raise _DnfOverflow
        return out
    raise TypeError(f"not NNF: {cond!r}")


# -- exact value bounds over N^n ------------------------------------------------

def _trivial_atom_value(poly, rel):
    """True / False if the atom holds for all / no points of N^n, else None."""
    zero = (0,) * poly.nvars
    const = poly.terms.get(zero, Fraction(0))
    others = [c for e, c in poly.terms.items() if e != zero]
    lo = const if all(c >= 0 for c in others) else None   # attained at 0
    hi = const if all(c <= 0 for c in others) else None
    if lo is None and hi is None:
        return None
    always = {
        "=0": lo == 0 and hi == 0,
        "!=0": (hi is not None and hi < 0) or (lo is not None and lo > 0),
        ">=0": lo is not None and lo >= 0,
        ">0": lo is not None and lo > 0,
        "<=0": hi is not None and hi <= 0,
        "<0": hi is not None and hi < 0,
    }[rel]
    if always:
        return True
    never = {
        "=0": (hi is not None and hi < 0) or (lo is not None and lo > 0),
        "!=0": lo == 0 and hi == 0,
        ">=0": hi is not None and hi < 0,
        ">0": hi is not None and hi <= 0,
        "<=0": lo is not None and lo > 0,
        "<0": lo is not None and lo >= 0,
    }[rel]
    if never:
        return False
    return None


# -- univariate analysis ---------------------------------------------------------

def _univar_coeffs(poly, var):
    out = {}
    for exp, coeff in poly.terms.items():
        out[exp[var]] = out.get(exp[var], Fraction(0)) + coeff
    return {d: c for d, c in out.items() if c}


def _eval_univar(coeffs, x):
    total = Fraction(0)
    for d, c in coeffs.items():
        total += c * Fraction(x) ** d
    return total


def _cauchy_limit(coeffs):
    """Integer T such that for all integers x > T the polynomial has the
    sign of its leading coefficient."""
    deg = max(coeffs)
    lead = coeffs[deg]
    if deg == 0:
        return 0
    bound = 1 + max((abs(c / lead) for d, c in coeffs.items() if d < deg),
                    default=Fraction(0))
    return int(bound) + 1


def _tail_sign_ok(coeffs, rel):
    lead = coeffs[max(coeffs)]
    if max(coeffs) == 0:
        return _rel_holds(lead, rel)
    sign = 1 if lead > 0 else -1
    return sign in _REL_SIGNS[rel]


def _decide_variable(atom_list, var):
    """Exact solution summary over N for univariate constraints on one
    variable: (allowed values <= T, T, tail) where tail says whether all
    integers > T are solutions."""
    coeff_lists = [( _univar_coeffs(a.poly, var), a.rel) for a in atom_list]
    T = max(_cauchy_limit(c) for c, _ in coeff_lists)
    allowed = [x for x in range(T + 1)
               if all(_rel_holds(_eval_univar(c, x), rel) for c, rel in coeff_lists)]
    tail = all(_tail_sign_ok(c, rel) for c, rel in coeff_lists)
    return allowed, T, tail


# -- conjunct decision -------------------------------------------------------------

@dataclass
class _Conjunct:
    """Work state: atom list plus the substitutions applied so far."""
    atoms: list
    subs: list  # ordered (var, ParamPoly expression in the remaining vars)


def _atom_key(a):
    return (a.rel, tuple(sorted(a.poly.terms.items(), key=lambda t: t[0])))


def _fold_atoms(atoms):
    """Drop trivially true atoms, detect trivially false ones and sign-set
    contradictions between identical polynomials.  Returns None for UNSAT."""
    seen = {}
    out = []
    for a in atoms:
        if isinstance(a, TrueCond):
            continue
        if isinstance(a, FalseCond):
            return None
        tv = _trivial_atom_value(a.poly, a.rel)
        if tv is True:
            continue
        if tv is False:
            return None
        key = tuple(sorted(a.poly.terms.items(), key=lambda t: t[0]))
        signs = seen.get(key)
        newsigns = _REL_SIGNS[a.rel] if signs is None else signs & _REL_SIGNS[a.rel]
        if not newsigns:
            return None
        seen[key] = newsigns
        if _atom_key(a) not in {_atom_key(b) for b in out}:
            out.append(a)
    return out


def _find_pin(atoms):
    """A univariate equation with a unique solution in N: (index, var, value);
    an equation with no solution returns (index, None, None) meaning UNSAT."""
    for i, a in enumerate(atoms):
        if a.rel != "=0":
            continue
        pres = a.poly.variables_present()
        if len(pres) != 1:
            continue
        var = next(iter(pres))
        allowed, T, tail = _decide_variable([a], var)
        if tail:
            continue  # infinitely many solutions; cannot pin
        if not allowed:
            return i, None, None
        if len(allowed) == 1:
            return i, var, allowed[0]
    return None


def _find_unit_elimination(atoms):
    """A linear multivariate equation solvable for a variable with unit
    coefficient and integral remaining coefficients: (index, var, expr)."""
    for i, a in enumerate(atoms):
        if a.rel != "=0":
            continue
        p = a.poly
        if p.total_degree() != 1:
            continue
        pres = sorted(p.variables_present())
        if len(pres) < 2:
            continue
        for var in pres:
            unit = [0] * p.nvars
            unit[var] = 1
            cv = p.terms.get(tuple(unit))
            if cv not in (1, -1):
                continue
            rest = p - ParamPoly.monomial(p.nvars, tuple(unit), cv)
            if any(c.denominator != 1 for c in rest.terms.values()):
                continue
            expr = rest * Fraction(-1, cv)
            return i, var, expr
    return None


def _simplify_conjunct_core(atoms):
    """Shared fixpoint: fold, pin, eliminate.  Returns (atoms, subs) or None
    for a proved-unsatisfiable conjunct.  Entries of subs define eliminated
    variables in terms of the remaining ones, in application order."""
    atoms = [a for a in atoms]
    subs = []
    while True:
        folded = _fold_atoms(atoms)
        if folded is None:
            return None
        atoms = folded
        pin = _find_pin(atoms)
        if pin is not None:
            i, var, value = pin
            if var is None:
                return None
            expr = ParamPoly.const(atoms[i].poly.nvars, value)
            del atoms[i]
            atoms = [atom(a.poly.subs_var(var, value), a.rel) for a in atoms]
            subs.append((var, expr))
            continue
        elim = _find_unit_elimination(atoms)
        if elim is not None:
            i, var, expr = elim
            nvars = atoms[i].poly.nvars
            del atoms[i]
            atoms = [atom(a.poly.subs_var_poly(var, expr), a.rel) for a in atoms]
            # the eliminated variable must still land in N
            atoms.append(atom(expr, ">=0"))
            subs.append((var, expr))
            continue
        return atoms, subs


def _witness_from(assign, subs, nvars):
    """Rebuild a witness for the original variables from a partial assignment
    and the substitution trail."""
    values = dict(assign)
    for var, expr in reversed(subs):
        v = expr.evaluate([values.get(i, 0) for i in range(nvars)])
        if v.denominator != 1 or v < 0:
            return None
        values[var] = int(v)
    return tuple(values.get(i, 0) for i in range(nvars))


def _decide_conjunct(atoms, nvars, box_bound):
    """('sat', witness) | ('unsat', None) | ('unknown', None)."""
    core = _simplify_conjunct_core(atoms)
    if core is None:
        return "unsat", None
    atoms, subs = core
    if not atoms:
        w = _witness_from({}, subs, nvars)
        return ("sat", w) if w is not None else ("unknown", None)
    by_var = {}
    multivar = []
    for a in atoms:
        pres = a.poly.variables_present()
        if len(pres) == 1:
            by_var.setdefault(next(iter(pres)), []).append(a)
        else:
            multivar.append(a)
    assign = {}
    for var, alist in by_var.items():
        allowed, T, tail = _decide_variable(alist, var)
        if not allowed and not tail:
            return "unsat", None
        assign[var] = allowed[0] if allowed else T + 1
    if not multivar:
        w = _witness_from(assign, subs, nvars)
        return ("sat", w) if w is not None else ("unknown", None)
    # finite search for a witness of the remaining system
    pres = sorted({v for a in multivar for v in a.poly.variables_present()}
                  | set(by_var))
    for point in itertools.product(range(box_bound + 1), repeat=len(pres)):
        cand = dict(zip(pres, point))
        ok = True
        for a in atoms:
            vec = [cand.get(i, 0) for i in range(nvars)]
            if not _rel_holds(a.poly.evaluate(vec), a.rel):
                ok = False
                break
        if ok:
            w = _witness_from(cand, subs, nvars)
            if w is not None:
                return "sat", w
    return "unknown", None


# -- public decision interface ---------------------------------------------------

@dataclass(frozen=True)
class SatResult:
    """Outcome of a satisfiability query: 'sat' (with verified witness),
    'unsat' (proved), or 'unknown'."""
    status: str
    witness: Optional[tuple] = None

    def __post_init__(self):
        if self.status not in ("sat", "unsat", "unknown"):
            raise ValueError(f"bad status {self.status!r}")
        if (self.witness is None) != (self.status != "sat"):
            raise ValueError("witness must accompany exactly the sat status")


DNF_CAP = 256
DEFAULT_BOX = 32

# Completion workloads re-check structurally identical conditions many times;
# a bounded memo table avoids repeating exhaustive witness searches.
_SAT_CACHE = {}
_SAT_CACHE_LIMIT = 100_000


def cond_sat(cond, nvars, box_bound=DEFAULT_BOX):
    """Satisfiability of cond over N^nvars.  SAT results carry a witness that
    has been re-checked against the original condition."""
    key = (cond, nvars, box_bound)
    try:
        cached = _SAT_CACHE.get(key)
    except TypeError:
        cached = None
        key = None
    if cached is not None:
        return cached
    result = _cond_sat_uncached(cond, nvars, box_bound)
    if key is not None:
        if len(_SAT_CACHE) >= _SAT_CACHE_LIMIT:
            _SAT_CACHE.clear()
        _SAT_CACHE[key] = result
    return result


def _cond_sat_uncached(cond, nvars, box_bound):
    nnf = to_nnf(cond)
    try:
        conjuncts = _to_dnf(nnf, DNF_CAP)
    except _DnfOverflow:
        return SatResult("unknown")
    if not conjuncts:
        return SatResult("unsat")
    any_unknown = False
    for conj in conjuncts:
        status, witness = _decide_conjunct(conj, nvars, box_bound)
        if status == "sat":
            if not cond_eval(cond, witness):
                raise AssertionError(
                    f"internal error: invalid witness {witness} for {cond!r}")
            return SatResult("sat", witness)
        if status == "unknown":
            any_unknown = True
    return SatResult("unknown" if any_unknown else "unsat")


@dataclass(frozen=True)
class ImpliesResult:
    """'proved' | 'disproved' (with counterexample) | 'unknown'."""
    status: str
    witness: Optional[tuple] = None


def cond_implies(b1, b2, nvars, box_bound=DEFAULT_BOX):
    """Does b1 imply b2 over N^nvars?  Proved iff b1 and not-b2 is UNSAT."""
    r = cond_sat(cond_and(b1, cond_not(b2)), nvars, box_bound)
    if r.status == "unsat":
        return ImpliesResult("proved")
    if r.status == "sat":
        return ImpliesResult("disproved", r.witness)
    return ImpliesResult("unknown")


# -- simplification ----------------------------------------------------------------

_REL_RANK = {"=0": 0, ">=0": 1, "<=0": 2, ">0": 3, "<0": 4, "!=0": 5}


def _atom_sort_key(a):
    pres = a.poly.variables_present()
    return (min(pres) if pres else -1, _REL_RANK[a.rel],
            tuple(sorted(a.poly.terms.items(), key=lambda t: t[0])))


def _emit_variable_atoms(alist, var, nvars):
    """Replace the univariate constraints on one variable by a canonical set
    with the same solutions: an equation, or lower bound plus exclusions, or
    a bounded window.  Returns None for an unsatisfiable combination."""
    allowed, T, tail = _decide_variable(alist, var)
    if not allowed and not tail:
        return None
    x = ParamPoly.variable(nvars, var)
    out = []
    if tail:
        if len(allowed) == T + 1:
            return []  # every natural number is a solution
        low = allowed[0] if allowed else T + 1
        if low > 0:
            out.append(atom(x - low, ">=0"))
        holes = [v for v in range(low + 1, T + 1) if v not in allowed]
        for h in holes:
            out.append(atom(x - h, "!=0"))
        return out
    if len(allowed) == 1:
        return [atom(x - allowed[0], "=0")]
    low, high = allowed[0], allowed[-1]
    if low > 0:
        out.append(atom(x - low, ">=0"))
    out.append(atom(x - high, "<=0"))
    for h in range(low + 1, high):
        if h not in allowed:
            out.append(atom(x - h, "!=0"))
    return out


def _simplify_conjunct_atoms(atoms, nvars, box_bound):
    """Simplified atom list with the same solution set, or None if proved
    unsatisfiable.  Iterated to a fixpoint because canonical re-emission can
    pin a variable (say from x < 1) that earlier passes could not substitute."""
    current = list(atoms)
    for _ in range(nvars + 3):
        result = _simplify_conjunct_round(current, nvars, box_bound)
        if result is None:
            return None
        if [_atom_key(a) for a in result] == [_atom_key(a) for a in current]:
            return result
        current = result
    return current


def _simplify_conjunct_round(atoms, nvars, box_bound):
    core = _simplify_conjunct_core(atoms)
    if core is None:
        return None
    reduced, subs = core
    by_var = {}
    multivar = []
    for a in reduced:
        pres = a.poly.variables_present()
        if len(pres) == 1:
            by_var.setdefault(next(iter(pres)), []).append(a)
        else:
            multivar.append(a)
    out = []
    for var in sorted(by_var):
        emitted = _emit_variable_atoms(by_var[var], var, nvars)
        if emitted is None:
            return None
        out.extend(emitted)
    out.extend(multivar)
    # re-introduce eliminated variables as equations x_var = expr
    for var, expr in reversed(subs):
        x = ParamPoly.variable(nvars, var)
        eq = atom(x - expr, "=0")
        if not isinstance(eq, TrueCond):
            out = [eq] + out
        # the nonnegativity guard added during elimination is implied by
        # x_var >= 0 once the equation is back; drop an exact duplicate
        guard = atom(expr, ">=0")
        out = [a for a in out if not (isinstance(a, Atom) and isinstance(guard, Atom)
                                      and _atom_key(a) == _atom_key(guard))]
    folded = _fold_atoms(out)
    if folded is None:
        return None
    # Drop atoms implied by the rest (proved-only, so the set is unchanged).
    # Only the exact layers can return 'unsat', so the witness box search is
    # pointless here and is disabled for speed.
    atoms_now = folded
    changed = True
    while changed:
        changed = False
        for i, a in enumerate(atoms_now):
            rest = atoms_now[:i] + atoms_now[i + 1:]
            negated = Atom(a.poly, _NEGATE[a.rel])
            status, _ = _decide_conjunct(rest + [negated], nvars, 0)
            if status == "unsat":
                atoms_now = rest
                changed = True
                break
    return sorted(atoms_now, key=_atom_sort_key)


def cond_simplify(cond, box_bound=DEFAULT_BOX):
    """A condition with the same solution set over N^n, in a compact
    canonical form.  Idempotent."""
    nnf = to_nnf(cond)
    nvars = _cond_nvars(nnf)
    if nvars is None:  # no atoms at all
        return nnf
    try:
        conjuncts = _to_dnf(nnf, DNF_CAP)
    except _DnfOverflow:
        return nnf
    results = []
    seen = set()
    for conj in conjuncts:
        simplified = _simplify_conjunct_atoms(conj, nvars, box_bound)
        if simplified is None:
            continue
        key = tuple(_atom_key(a) for a in simplified)
        if key in seen:
            continue
        seen.add(key)
        results.append(simplified)
    if not results:
        return FALSE
    if any(not conj for conj in results):
        return TRUE
    return cond_or(*(cond_and(*conj) for conj in results))


def _cond_nvars(cond):
    if isinstance(cond, Atom):
        return cond.poly.nvars
    if isinstance(cond, (And, Or)):
        for c in cond.children:
            n = _cond_nvars(c)
            if n is not None:
                return n
        return None
    if isinstance(cond, Not):
        return _cond_nvars(cond.child)
    return None


# -- serialization -----------------------------------------------------------------

def _param_sexpr(poly, names):
    terms = poly.sorted_terms()
    pos, neg = [], []
    for exp, coeff in terms:
        target = pos if coeff > 0 else neg
        target.append((exp, abs(coeff)))

    def term_sexpr(exp, coeff):
        factors = []
        for name, e in zip(names, exp):
            if e == 0:
                continue
            factors.append(name if e == 1 else f"(^ {name} {e})")
        if coeff != 1 or not factors:
            c = (_frac_str(coeff) if coeff.denominator == 1
                 else f"(/ {coeff.numerator} {coeff.denominator})")
            factors.insert(0, c)
        if len(factors) == 1:
            return factors[0]
        return "(* " + " ".join(factors) + ")"

    def combine(parts):
        if len(parts) == 1:
            return parts[0]
        return "(+ " + " ".join(parts) + ")"

    if not pos and not neg:
        return "0"
    pos_s = combine([term_sexpr(*t) for t in pos]) if pos else "0"
    if not neg:
        return pos_s
    return "(- " + pos_s + " " + " ".join(term_sexpr(*t) for t in neg) + ")"


def cond_to_sexpr(cond, names):
    """Prefix S-expression serialization, e.g. (and (= (- x2 2) 0) (!= x1 0))."""
    if isinstance(cond, TrueCond):
        return "true"
    if isinstance(cond, FalseCond):
        return "false"
    if isinstance(cond, Atom):
        return f"({_REL_SYM[cond.rel]} {_param_sexpr(cond.poly, names)} 0)"
    if isinstance(cond, And):
        return "(and " + " ".join(cond_to_sexpr(c, names) for c in cond.children) + ")"
    if isinstance(cond, Or):
        return "(or " + " ".join(cond_to_sexpr(c, names) for c in cond.children) + ")"
    if isinstance(cond, Not):
        return "(not " + cond_to_sexpr(cond.child, names) + ")"
    raise TypeError(f"not a condition: {cond!r}")


def _sexpr_tokens(text):
    return text.replace("(", " ( ").replace(")", " ) ").split()


def _read_sexpr(tokens, pos):
    tok = tokens[pos]
    if tok == "(":
        out = []
        pos += 1
        while tokens[pos] != ")":
            node, pos = _read_sexpr(tokens, pos)
            out.append(node)
        return out, pos + 1
    return tok, pos + 1


def _sexpr_to_param(node, index, nvars):
    if isinstance(node, str):
        if node in index:
            return ParamPoly.variable(nvars, index[node])
        return ParamPoly.const(nvars, Fraction(node))
    head, args = node[0], node[1:]
    if head == "+":
        out = ParamPoly.zero(nvars)
        for a in args:
            out += _sexpr_to_param(a, index, nvars)
        return out
    if head == "-":
        out = _sexpr_to_param(args[0], index, nvars)
        for a in args[1:]:
            out -= _sexpr_to_param(a, index, nvars)
        return out
    if head == "*":
        out = ParamPoly.const(nvars, 1)
        for a in args:
            out = out * _sexpr_to_param(a, index, nvars)
        return out
    if head == "^":
        base = _sexpr_to_param(args[0], index, nvars)
        return base ** int(args[1])
    if head == "/":
        return ParamPoly.const(nvars, Fraction(int(args[0]), int(args[1])))
    raise ValueError(f"unknown operator {head!r} in polynomial S-expression")


def parse_cond_sexpr(text, names):
    """Inverse of cond_to_sexpr."""
    tokens = _sexpr_tokens(text)
    node, pos = _read_sexpr(tokens, 0)
    if pos != len(tokens):
        raise ValueError("trailing input in condition S-expression")
    index = {name: i for i, name in enumerate(names)}

    def build(n):
        if n == "true":
            return TRUE
        if n == "false":
            return FALSE
        head = n[0]
        if head == "and":
            return cond_and(*(build(c) for c in n[1:]))
        if head == "or":
            return cond_or(*(build(c) for c in n[1:]))
        if head == "not":
            return cond_not(build(n[1]))
        if head in _SYM_REL:
            poly = _sexpr_to_param(n[1], index, len(names))
            return atom(poly, _SYM_REL[head])
        raise ValueError(f"unknown condition operator {head!r}")

    return build(node)

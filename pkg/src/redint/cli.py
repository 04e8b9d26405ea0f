"""Problem files, system serialization, and the command-line interface.

Problem files are line oriented; '#' starts a comment anywhere:

    [vars] t1 t2            generator names (defines n)
    [deriv] t2 = t2^2+1     derivative of a generator, optionally num / den
    [order] lex             or: matrix 0 1 1; 2 0 1; 0 0 1
    [v] t2^2+1              denominator of the integral (default 1)
    [f0] t1 / (t2^2+1)      integrand, optionally num / den
    [f] t1*t2               extra right-hand sides with undetermined constants
                            (already converted, i.e. polynomials; repeatable)
    [weights] 2 0 1         weight vector (repeatable)
    [budget] 200 64         main-loop and inner-loop budgets

The expression grammar is the one implemented in redint.poly: sums of
products of rationals and names with integer (possibly negative) powers,
parentheses allowed, whitespace insensitive.

Reduction systems serialize to JSON with a format_version tag, embedding the
problem so a saved system is self-contained and re-validatable.  Built-in
systems are addressed as builtin:airy, builtin:cei-block1, builtin:cei-block2.

Subcommands: basic-rules, complete, integrate, bound, verify.  Exit codes:
0 success, 1 unsolved or budget exceeded, 2 parse or validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import bound_from_system
from .builtin import BUILTIN_NAMES, builtin_context
from .completion import CompletionStatus, complete_norman, complete_refined
from .conditions import cond_to_sexpr, parse_cond_sexpr
from .diffop import DerivationSpec, build_p, integrand_to_rhs
from .engine import solve_main_problem, verify_integral
from .poly import (LaurentPoly, MonomialOrder, ParseError, parse_poly,
                   poly_to_str, weighted_degree)
from .rules import ReductionRule, ReductionSystem, basic_rules, validate_rule

FORMAT_VERSION = 1


class ProblemError(ValueError):
    """Problem-file syntax or consistency error, with location."""

    def __init__(self, message, line=None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")
        self.line = line


@dataclass
class ProblemFile:
    var_names: list
    derivs: list                  # (num, den) LaurentPoly pairs
    order: MonomialOrder
    v: LaurentPoly
    f0: tuple                     # (num, den) or None
    fs: list = field(default_factory=list)
    weights: list = field(default_factory=list)
    max_iterations: int = 200
    inner_budget: int = 64

    @property
    def n(self):
        return len(self.var_names)

    @property
    def xnames(self):
        return [f"x{i+1}" for i in range(self.n)]

    def derivation(self):
        return DerivationSpec(self.var_names, self.derivs)

    def operator(self):
        return build_p(self.derivation(), self.v)

    def to_dict(self):
        ts = self.var_names
        return {
            "vars": list(ts),
            "derivs": [[poly_to_str(num, [], ts), poly_to_str(den, [], ts)]
                       for num, den in self.derivs],
            "order": [[str(x) for x in row] for row in self.order.matrix],
            "v": poly_to_str(self.v, [], ts),
        }


def _parse_expr_pair(text, tvars, line_no):
    """expr optionally followed by '/' expr."""
    try:
        from .poly import parse_poly_partial
        num, rest_pos = parse_poly_partial(text, [], tvars)
        rest = text[rest_pos:].strip()
        if not rest:
            return num, LaurentPoly.one(len(tvars))
        if not rest.startswith("/"):
            raise ProblemError(f"trailing input {rest!r}", line_no)
        den = parse_poly(rest[1:], [], tvars)
        return num, den
    except ParseError as e:
        raise ProblemError(str(e), line_no) from None


def parse_problem_text(text, name="<problem>"):
    var_names = None
    deriv_map = {}
    order_spec = None
    v = None
    f0 = None
    fs = []
    weights = []
    max_iterations = 200
    inner_budget = 64
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not line.startswith("["):
            raise ProblemError(f"expected a [section] line, got {line!r}", line_no)
        end = line.find("]")
        if end < 0:
            raise ProblemError("unterminated section name", line_no)
        section = line[1:end].strip()
        body = line[end + 1:].strip()
        if section == "vars":
            var_names = body.split()
            if not var_names:
                raise ProblemError("empty [vars] line", line_no)
            continue
        if var_names is None:
            raise ProblemError("[vars] must come before other sections", line_no)
        if section == "deriv":
            if "=" not in body:
                raise ProblemError("expected 'name = expression'", line_no)
            name_part, expr = body.split("=", 1)
            name_part = name_part.strip()
            if name_part not in var_names:
                raise ProblemError(f"unknown variable {name_part!r}", line_no)
            deriv_map[name_part] = _parse_expr_pair(expr, var_names, line_no)
        elif section == "order":
            order_spec = (body, line_no)
        elif section == "v":
            v = _parse_only_poly(body, var_names, line_no)
        elif section == "f0":
            f0 = _parse_expr_pair(body, var_names, line_no)
        elif section == "f":
            fs.append(_parse_only_poly(body, var_names, line_no))
        elif section == "weights":
            parts = body.replace(",", " ").split()
            if len(parts) != len(var_names):
                raise ProblemError("weight vector has wrong length", line_no)
            weights.append(tuple(Fraction(p) for p in parts))
        elif section == "budget":
            parts = body.split()
            if len(parts) not in (1, 2):
                raise ProblemError("expected '[budget] main [inner]'", line_no)
            max_iterations = int(parts[0])
            if len(parts) == 2:
                inner_budget = int(parts[1])
        else:
            raise ProblemError(f"unknown section [{section}]", line_no)
    if var_names is None:
        raise ProblemError("missing [vars] section")
    missing = [t for t in var_names if t not in deriv_map]
    if missing:
        raise ProblemError(f"missing [deriv] line for {', '.join(missing)}")
    n = len(var_names)
    order = _build_order(order_spec, n)
    if v is None:
        v = LaurentPoly.one(n)
    return ProblemFile(var_names, [deriv_map[t] for t in var_names], order, v,
                       f0, fs, weights, max_iterations, inner_budget)


def _parse_only_poly(text, tvars, line_no):
    try:
        p = parse_poly(text, [], tvars)
    except ParseError as e:
        raise ProblemError(str(e), line_no) from None
    if not p.is_ordinary():
        raise ProblemError("negative exponents are not allowed here", line_no)
    return p


def _build_order(order_spec, n):
    if order_spec is None:
        return MonomialOrder.lex(n)
    body, line_no = order_spec
    if body == "lex":
        return MonomialOrder.lex(n)
    if not body.startswith("matrix"):
        raise ProblemError("expected 'lex' or 'matrix q11 q12 ...; ...'", line_no)
    rows = []
    for chunk in body[len("matrix"):].split(";"):
        parts = chunk.split()
        if not parts:
            continue
        if len(parts) != n:
            raise ProblemError("order matrix row has wrong length", line_no)
        rows.append([Fraction(p) for p in parts])
    if len(rows) != n:
        raise ProblemError("order matrix needs one row per variable", line_no)
    try:
        return MonomialOrder(rows)
    except ValueError as e:
        raise ProblemError(str(e), line_no) from None


def parse_problem_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_problem_text(fh.read(), name=path)


# ---------------------------------------------------------------------------
# System serialization
# ---------------------------------------------------------------------------

@dataclass
class SavedSystem:
    problem: ProblemFile
    op: object
    system: ReductionSystem


def system_to_json(system, problem):
    ts = problem.var_names
    xs = problem.xnames
    rules = []
    for r in system.rules:
        rules.append({
            "index": r.index,
            "P": poly_to_str(r.P, xs, ts),
            "Q": poly_to_str(r.Q, xs, ts),
            "B": cond_to_sexpr(r.B, xs),
        })
    doc = {
        "format_version": FORMAT_VERSION,
        "problem": problem.to_dict(),
        "rules": rules,
        "metadata": {k: v for k, v in sorted(system.metadata.items())},
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def save_system(path, system, problem):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(system_to_json(system, problem))


def load_system(path, samples=10):
    """Load and re-validate a serialized system; raises ValueError on
    version mismatch or any rule failing its invariants."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("format_version") != FORMAT_VERSION:
        raise ValueError(f"unsupported format_version {doc.get('format_version')!r}")
    prob_d = doc["problem"]
    ts = prob_d["vars"]
    n = len(ts)
    xs = [f"x{i+1}" for i in range(n)]
    derivs = [(parse_poly(num, [], ts), parse_poly(den, [], ts))
              for num, den in prob_d["derivs"]]
    order = MonomialOrder([[Fraction(x) for x in row] for row in prob_d["order"]])
    v = parse_poly(prob_d["v"], [], ts)
    problem = ProblemFile(ts, derivs, order, v, None)
    op = problem.operator()
    rules = []
    for rd in doc["rules"]:
        P = parse_poly(rd["P"], xs, ts)
        Q = parse_poly(rd["Q"], xs, ts)
        B = parse_cond_sexpr(rd["B"], xs)
        try:
            rule = ReductionRule(P, Q, B, order, index=rd.get("index"))
        except ValueError as e:
            raise ValueError(f"invalid rule in {path}: {e}") from None
        validate_rule(rule, op, samples=samples)
        rules.append(rule)
    system = ReductionSystem(order, rules, metadata=doc.get("metadata", {}))
    return SavedSystem(problem, op, system)


def resolve_system(spec_str, problem=None, samples=10):
    """A system reference: either 'builtin:NAME' or a path to a saved file.

    Returns (op, system, source_label).  When given a problem, checks it is
    compatible with the system's operator."""
    if spec_str.startswith("builtin:"):
        ctx = builtin_context(spec_str[len("builtin:"):])
        op, system = ctx.op, ctx.system
    else:
        saved = load_system(spec_str, samples=samples)
        op, system = saved.op, saved.system
    if problem is not None:
        own = problem.operator()
        if own.p != op.p:
            raise ValueError(
                "problem and reduction system define different operators "
                "(check derivatives, v, and the order)")
        if problem.order != system.order:
            raise ValueError("problem and reduction system use different "
                             "monomial orders")
    return op, system


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _print_rules(system, problem, out):
    xs = problem.xnames
    ts = problem.var_names
    for r in system.rules:
        idx = f"r{r.index}" if r.index is not None else "r?"
        print(f"{idx}:", file=out)
        print(f"  P = {poly_to_str(r.P, xs, ts)}", file=out)
        print(f"  Q = {poly_to_str(r.Q, xs, ts)}", file=out)
        print(f"  B = {cond_to_sexpr(r.B, xs)}", file=out)


def cmd_basic_rules(args, out):
    problem = parse_problem_file(args.problem)
    op = problem.operator()
    system = basic_rules(op, problem.order)
    print(f"basic rules: {len(system.rules)}", file=out)
    _print_rules(system, problem, out)
    if args.output:
        save_system(args.output, system, problem)
        print(f"saved to {args.output}", file=out)
    return 0


def cmd_complete(args, out):
    problem = parse_problem_file(args.problem)
    op = problem.operator()
    base = basic_rules(op, problem.order)
    max_iter = args.max_iter if args.max_iter is not None else problem.max_iterations
    inner = args.inner_budget if args.inner_budget is not None else problem.inner_budget
    if args.algo == "norman":
        outcome = complete_norman(base, max_iter)
    else:
        outcome = complete_refined(base, max_iter, inner)
    print(f"status: {outcome.status.value}", file=out)
    print(f"iterations: {outcome.iterations}", file=out)
    print(f"rules: {len(outcome.system.rules)}", file=out)
    _print_rules(outcome.system, problem, out)
    for k in outcome.kernel_elements:
        print(f"kernel element: {poly_to_str(k, [], problem.var_names)}", file=out)
    if args.trace:
        for line in outcome.trace_lines():
            print(line, file=out)
    if args.output:
        save_system(args.output, outcome.system, problem)
        print(f"saved to {args.output}", file=out)
    return 0 if outcome.status != CompletionStatus.MAIN_BUDGET_EXCEEDED else 1


def cmd_integrate(args, out):
    problem = parse_problem_file(args.problem)
    if problem.f0 is None:
        raise ProblemError("missing [f0] section")
    op, system = resolve_system(args.system, problem)
    ts = problem.var_names
    rhs0 = integrand_to_rhs(op, *problem.f0)
    sol = solve_main_problem(rhs0, problem.fs, system)
    print(f"u = {poly_to_str(sol.preimage, [], ts)}", file=out)
    print(f"v = {poly_to_str(problem.v, [], ts)}", file=out)
    print("c = [" + ", ".join(str(c) for c in sol.constants) + "]", file=out)
    print(f"remainder = {poly_to_str(sol.remainder, [], ts)}", file=out)
    if sol.budget_exhausted:
        print("warning: step budget exhausted; reduction incomplete", file=out)
        return 1
    if sol.solvable and not problem.fs:
        ok = verify_integral(problem.derivation(), sol.preimage, problem.v,
                             *problem.f0)
        print(f"verified: d(u/v) = f0 is {str(ok).lower()}", file=out)
        if not ok:
            return 2
    return 0 if sol.solvable else 1


def cmd_bound(args, out):
    problem = parse_problem_file(args.problem)
    op, system = resolve_system(args.system, problem)
    weights = []
    if args.weights:
        parts = args.weights.replace(",", " ").split()
        if len(parts) != problem.n:
            raise ProblemError("weight vector has wrong length")
        weights.append(tuple(Fraction(p) for p in parts))
    weights.extend(problem.weights)
    if not weights:
        raise ProblemError("no weight vector given ([weights] line or --weights)")
    cap = args.family_cap
    code = 0
    for w in weights:
        tail = None
        if system.families:
            # assert the family tail from the inspected members; the shipped
            # families have constant deg_w(Q) tails so this is their true sup
            tail = max(weighted_degree(r.Q, w)
                       for fam in system.families
                       for r in fam.members_up_to(cap))
        try:
            phi = bound_from_system(system, w, cap, family_tail_sup=tail)
        except ValueError as e:
            print(f"w = {_fmt_weights(w)}: error: {e}", file=out)
            code = 2
            continue
        note = (f" (family tail {tail} asserted from members 0..{cap})"
                if tail is not None else "")
        print(f"w = {_fmt_weights(w)}: bound {phi!r}{note}", file=out)
    return code


def _fmt_weights(w):
    return "(" + ",".join(str(x) for x in w) + ")"


def cmd_verify(args, out):
    if args.system.startswith("builtin:"):
        ctx = builtin_context(args.system[len("builtin:"):])
        op, system = ctx.op, ctx.system
        rules = list(system.rules)
        for fam in system.families:
            rules.extend(fam.members_up_to(args.family_cap))
    else:
        saved = load_system(args.system, samples=args.samples)
        op, system = saved.op, saved.system
        rules = list(system.rules)
    failures = 0
    for i, rule in enumerate(rules):
        label = f"r{rule.index}" if rule.index is not None else f"rule[{i}]"
        try:
            found = validate_rule(rule, op, samples=args.samples)
            print(f"{label}: ok ({found} conforming samples)", file=out)
        except AssertionError as e:
            print(f"{label}: FAILED: {e}", file=out)
            failures += 1
    print(f"verified {len(rules)} rules, {failures} failures", file=out)
    return 0 if failures == 0 else 2


def build_parser():
    parser = argparse.ArgumentParser(
        prog="redint",
        description="reduction systems, completion, and degree bounds for "
                    "first-order operators on polynomial rings")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basic-rules", help="compute the basic reduction rules")
    p.add_argument("problem")
    p.add_argument("-o", "--output", help="save the system to a JSON file")
    p.set_defaults(func=cmd_basic_rules)

    p = sub.add_parser("complete", help="run a completion process")
    p.add_argument("problem")
    p.add_argument("--algo", choices=("norman", "refined"), default="refined")
    p.add_argument("--max-iter", type=int, default=None)
    p.add_argument("--inner-budget", type=int, default=None)
    p.add_argument("--trace", action="store_true",
                   help="print one line per completion event")
    p.add_argument("-o", "--output", help="save the system to a JSON file")
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("integrate", help="solve L(u) = rhs by reduction")
    p.add_argument("problem")
    p.add_argument("--system", required=True,
                   help="saved system file or builtin:" + "|".join(BUILTIN_NAMES))
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser("bound", help="derive a weighted degree bound")
    p.add_argument("problem")
    p.add_argument("--system", required=True)
    p.add_argument("--weights", help="comma separated weight vector")
    p.add_argument("--family-cap", type=int, default=10)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("verify", help="re-validate the rules of a system")
    p.add_argument("--system", required=True)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--family-cap", type=int, default=10)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv, out=None):
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return args.func(args, out)
    except (ProblemError, ParseError, ValueError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=out)
        return 2


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

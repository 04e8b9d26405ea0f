"""Reduction systems for first-order linear operators on polynomial rings:
construction and completion of conditional rewrite rules, reduction-based
integration in the Risch-Norman setting, and rigorous weighted degree bounds.
"""

from .poly import (LaurentPoly, MonomialOrder, ParamPoly, ParseError,
                   leading_data, parse_poly, poly_gcd, poly_to_str,
                   weighted_degree)
from .conditions import (FALSE, TRUE, Atom, SatResult, atom, cond_and,
                         cond_eval, cond_implies, cond_not, cond_or, cond_sat,
                         cond_simplify, cond_to_sexpr, parse_cond_sexpr)
from .diffop import (DerivationSpec, OperatorSpec, apply_L,
                     apply_derivation_rational, build_p, build_tilde,
                     heuristic_bounds, homogeneous_weights, integrand_to_rhs)
from .rules import (ConditionalIdentity, ReductionRule, ReductionSystem,
                    basic_rules, ci_reducible, ci_to_rules, critical_pair,
                    offset_of, reduce_ci, reduce_poly_step, validate_rule)
from .completion import (CompletionOutcome, CompletionStatus, complete_norman,
                         complete_refined)
from .builtin import (BUILTIN_NAMES, RuleFamily, airy_field,
                      airy_hard_instance, airy_rules, airy_system,
                      builtin_context, cei_field, cei_rules_v1, cei_rules_v2,
                      cei_system_v1, cei_system_v2, double_factorial)
from .engine import (MainProblemSolution, NormalFormResult, normal_form,
                     oracle_solve, solve_main_problem, verify_integral)
from .bounds import (Affine, Const, DegreeBoundFn, FloorAffine, Max,
                     Piecewise, Precompose, Scale, Sum, bound_compose,
                     bound_eval, bound_from_system, bound_homogeneous,
                     builtin_bound, rescale_bound)
from .cli import (ProblemFile, load_system, parse_problem_file,
                  parse_problem_text, save_system)

__version__ = "0.1.0"

"""Completion of precomplete reduction systems by critical-pair resolution.

Two procedures are provided.  The classic one keeps every rule and works
through a FIFO queue of critical pairs, adding the rules generated from each
reduced pair.  The refined one removes the rule with the larger preimage
leading monomial, keeps the part of it outside the partner's condition, and
reduces the pair result further by smaller-offset rules before creating new
rules; this terminates in strictly more cases.

Neither procedure terminates in general, so both take an iteration budget
and return the partial system with an event trace on exhaustion.  When a
reduced pair has provably no nonzero instances but its preimage side does,
the instantiated preimage is an element of the kernel of the operator and is
recorded.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum

from .conditions import (FalseCond, cond_and, cond_not, cond_sat,
                         cond_simplify)
from .poly import leading_data
from .rules import (ConditionalIdentity, ReductionRule, ReductionSystem,
                    _Counter, ci_reducible, ci_to_rules, critical_pair,
                    reduce_ci)


class CompletionStatus(Enum):
    COMPLETE = "complete"
    MAIN_BUDGET_EXCEEDED = "main-budget-exceeded"
    # completed, but an inner reduction loop was cut short along the way
    INNER_BUDGET_EXCEEDED_CONTINUED = "inner-budget-exceeded-continued"


@dataclass(frozen=True)
class TraceEvent:
    iteration: int
    kind: str      # pair | remove | add | reduce | algorithm1 | kernel | inner-budget
    detail: tuple

    def render(self):
        return f"{self.kind} {self.detail}"


@dataclass
class CompletionOutcome:
    status: CompletionStatus
    system: ReductionSystem
    kernel_elements: list
    trace: list
    iterations: int

    def trace_lines(self):
        """One line per main-loop iteration, in the documented format."""
        by_iter = {}
        for ev in self.trace:
            by_iter.setdefault(ev.iteration, []).append(ev)
        lines = []
        for it in sorted(by_iter):
            evs = by_iter[it]
            pair = next((e for e in evs if e.kind == "pair"), None)
            removed = [e.detail[0] for e in evs if e.kind == "remove"]
            added = [e.detail[0] for e in evs if e.kind == "add"]
            kernel = [e for e in evs if e.kind == "kernel"]
            if pair is None:
                continue
            i, j = pair.detail
            parts = [f"iter {it}: pair ({i},{j})"]
            tail = []
            if removed:
                tail.append("removed " + ", ".join(f"r{k}" for k in removed))
            if added:
                tail.append("added " + ", ".join(f"r{k}" for k in added))
            if kernel:
                tail.append("kernel element recorded")
            if tail:
                parts.append(" -> " + "; ".join(tail))
            lines.append("".join(parts))
        return lines


def _maybe_kernel(ci, trace, iteration, nvars, kernel_elements, box_bound):
    """If the reduced identity has no rule content but a satisfiable
    condition, record the instantiated preimage as a kernel element."""
    sat = cond_sat(ci.B, nvars, box_bound)
    if sat.status != "sat":
        return
    alpha = sat.witness
    q_inst = ci.Q.substitute_x(alpha).mul_tpow(alpha)
    if q_inst.is_zero():
        return
    p_inst = ci.P.substitute_x(alpha).mul_tpow(alpha)
    if not p_inst.is_zero():
        return
    kernel_elements.append(q_inst)
    trace.append(TraceEvent(iteration, "kernel", (alpha,)))


def complete_norman(basic, max_iterations=200, box_bound=32):
    """Completion that only ever adds rules; pairs are processed FIFO.

    The input must be a precomplete reduction system (the output of
    basic_rules qualifies)."""
    order = basic.order
    nvars = basic.nvars
    rules = list(basic.rules)
    counter = _Counter(start=max((r.index or 0) for r in rules) + 1 if rules else 1)
    trace = []
    kernel_elements = []

    def is_pair(a, b):
        ans, _ = critical_pair(a, b, box_bound)
        return ans

    queue = deque()
    for j in range(len(rules)):
        for i in range(j):
            if is_pair(rules[i], rules[j]):
                queue.append((rules[i].index, rules[j].index))
    by_index = {r.index: r for r in rules}
    iteration = 0
    while queue:
        if iteration >= max_iterations:
            return CompletionOutcome(
                CompletionStatus.MAIN_BUDGET_EXCEEDED,
                ReductionSystem(order, rules, metadata={"source": "norman",
                                                        "complete": False}),
                kernel_elements, trace, iteration)
        iteration += 1
        i, j = queue.popleft()
        trace.append(TraceEvent(iteration, "pair", (i, j)))
        ri, rj = by_index[i], by_index[j]
        B = cond_simplify(cond_and(ri.B, rj.B), box_bound)
        ci = ConditionalIdentity(rj.P, rj.Q, B)
        reduced = reduce_ci(ci, ri)
        trace.append(TraceEvent(iteration, "reduce", (i,)))
        if reduced.P.is_zero():
            _maybe_kernel(reduced, trace, iteration, nvars, kernel_elements,
                          box_bound)
            continue
        trace.append(TraceEvent(iteration, "algorithm1", ()))
        new_rules = ci_to_rules(reduced, order, box_bound,
                                next_index=counter.next)
        if not new_rules:
            _maybe_kernel(reduced, trace, iteration, nvars, kernel_elements,
                          box_bound)
        for r in new_rules:
            trace.append(TraceEvent(iteration, "add", (r.index,)))
        old_rules = list(rules)
        for r in new_rules:
            by_index[r.index] = r
            rules.append(r)
        for new in new_rules:
            for other in old_rules:
                if is_pair(other, new):
                    queue.append((other.index, new.index))
            for other in new_rules:
                if other.index < new.index and is_pair(other, new):
                    queue.append((other.index, new.index))
    return CompletionOutcome(
        CompletionStatus.COMPLETE,
        ReductionSystem(order, rules, metadata={"source": "norman",
                                                "complete": True}),
        kernel_elements, trace, iteration)


def complete_refined(basic, max_iterations=200, inner_budget=64, box_bound=32):
    """Refined completion: resolves each critical pair by splitting the rule
    with the larger preimage leading monomial and replacing it.

    Pair selection: among critical pairs with distinct offsets, the pair
    whose larger lm_t(Q) is order-smallest, ties broken by creation index.
    The inner loop reduces the pair result by rules of strictly smaller
    offset, up to inner_budget steps."""
    order = basic.order
    nvars = basic.nvars
    rules = list(basic.rules)
    counter = _Counter(start=max((r.index or 0) for r in rules) + 1 if rules else 1)
    trace = []
    kernel_elements = []
    inner_budget_hit = False
    iteration = 0

    def select_pair():
        best = None
        for a in rules:
            for b in rules:
                if a.index >= b.index:
                    continue
                cmp = order.compare(a.offset, b.offset)
                if cmp == 0:
                    continue
                small, large = (a, b) if cmp < 0 else (b, a)
                ans, _ = critical_pair(a, b, box_bound)
                if not ans:
                    continue
                key = (order.key(large.offset), large.index, small.index)
                if best is None or key < best[0]:
                    best = (key, small, large)
        if best is None:
            return None
        return best[1], best[2]

    while True:
        chosen = select_pair()
        if chosen is None:
            status = (CompletionStatus.INNER_BUDGET_EXCEEDED_CONTINUED
                      if inner_budget_hit else CompletionStatus.COMPLETE)
            return CompletionOutcome(
                status,
                ReductionSystem(order, rules, metadata={"source": "refined",
                                                        "complete": True}),
                kernel_elements, trace, iteration)
        if iteration >= max_iterations:
            return CompletionOutcome(
                CompletionStatus.MAIN_BUDGET_EXCEEDED,
                ReductionSystem(order, rules, metadata={"source": "refined",
                                                        "complete": False}),
                kernel_elements, trace, iteration)
        iteration += 1
        ri, rj = chosen
        trace.append(TraceEvent(iteration, "pair", (ri.index, rj.index)))
        rules.remove(rj)
        trace.append(TraceEvent(iteration, "remove", (rj.index,)))
        remainder_cond = cond_simplify(cond_and(rj.B, cond_not(ri.B)),
                                       box_bound)
        keep_remainder = not isinstance(remainder_cond, FalseCond)
        if keep_remainder:
            sat = cond_sat(remainder_cond, nvars, box_bound)
            keep_remainder = sat.status != "unsat"
        if keep_remainder:
            new_rule = ReductionRule(rj.P, rj.Q, remainder_cond, order,
                                     index=counter.next())
            rules.append(new_rule)
            trace.append(TraceEvent(iteration, "add", (new_rule.index,)))
        B = cond_simplify(cond_and(ri.B, rj.B), box_bound)
        ci = ConditionalIdentity(rj.P, rj.Q, B)
        ci = reduce_ci(ci, ri)
        trace.append(TraceEvent(iteration, "reduce", (ri.index,)))
        steps = 0
        while not ci.P.is_zero():
            if steps >= inner_budget:
                inner_budget_hit = True
                trace.append(TraceEvent(iteration, "inner-budget", ()))
                break
            delta = _offset_key(ci, order)
            candidates = [r for r in rules
                          if order.key(r.offset) < delta and ci_reducible(ci, r, box_bound)]
            if not candidates:
                break
            candidates.sort(key=lambda r: (order.key(r.offset), r.index))
            ci = reduce_ci(ci, candidates[0])
            trace.append(TraceEvent(iteration, "reduce", (candidates[0].index,)))
            steps += 1
        trace.append(TraceEvent(iteration, "algorithm1", ()))
        new_rules = ci_to_rules(ci, order, box_bound, next_index=counter.next)
        if not new_rules:
            _maybe_kernel(ci, trace, iteration, nvars, kernel_elements,
                          box_bound)
        for r in new_rules:
            rules.append(r)
            trace.append(TraceEvent(iteration, "add", (r.index,)))


def _offset_key(ci, order):
    lp = leading_data(ci.P, order).lm
    lq = leading_data(ci.Q, order).lm
    if lq is None:
        raise ValueError("offset undefined for Q = 0")
    return order.key(tuple(q - p for p, q in zip(lp, lq)))

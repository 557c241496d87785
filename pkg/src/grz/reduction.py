"""Reducing mappings: from proofs of ``G => D, A`` and ``A, G => D`` without
cuts in their main fragments, build a proof of ``G => D`` without cuts in its
main fragment.

Atoms recurse on the left proof, boxes on both proofs, and implications and
bot are handled by inversion. Results are lazy: only the root is computed
eagerly and every child is a deferred call.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContextMismatch, MultisetError, NotInP1
from .formula import BOT, Formula, Multiset, Sequent
from .proofs import (BOX_INF, CUT, IMP_L, IMP_R, REFL, InfProof, RuleInstance, in_P_n)
from .transforms import contract_atom, inv_bot, inv_imp, li_box, li_imp, ri_imp, weaken


@dataclass(frozen=True)
class ReductionRequest:
    cut_formula: Formula
    left: InfProof
    right: InfProof


def reduce(req: ReductionRequest, check: bool = True) -> InfProof:
    """Reduce a cut on ``req.cut_formula``; inputs must be cut-free at depth 1."""
    if check:
        for side, p in (("left", req.left), ("right", req.right)):
            if not in_P_n(p, 1):
                raise NotInP1(f"{side} proof has a cut in its main fragment")
    return reduce_unchecked(req.cut_formula, req.left, req.right)


def cut_context(a: Formula, left: InfProof, right: InfProof) -> Sequent:
    try:
        gamma = right.sequent.ant.remove(a)
        delta = left.sequent.suc.remove(a)
    except MultisetError as exc:
        raise ContextMismatch(f"cut formula {a} missing: {exc}") from None
    if left.sequent.ant != gamma or right.sequent.suc != delta:
        raise ContextMismatch(
            f"contexts disagree for cut on {a}: {left.sequent} vs {right.sequent}")
    return Sequent(gamma, delta)


def reduce_unchecked(a: Formula, left: InfProof, right: InfProof) -> InfProof:
    goal = cut_context(a, left, right)
    if a is BOT:
        return inv_bot(left)
    if a.is_atom:
        return _reduce_atom(a, left, right, goal)
    if a.is_implication:
        b, c = a.left, a.right
        inner = reduce_unchecked(b, weaken(ri_imp(right, a), sigma=Multiset([c])), inv_imp(left, a))
        return reduce_unchecked(c, inner, li_imp(right, a))
    return _reduce_box(a, left, right, goal)


def reduce_atom(req: ReductionRequest) -> InfProof:
    if not req.cut_formula.is_atom:
        raise ValueError(f"{req.cut_formula} is not an atom")
    goal = cut_context(req.cut_formula, req.left, req.right)
    return _reduce_atom(req.cut_formula, req.left, req.right, goal)


def reduce_box(req: ReductionRequest) -> InfProof:
    if not req.cut_formula.is_box:
        raise ValueError(f"{req.cut_formula} is not boxed")
    goal = cut_context(req.cut_formula, req.left, req.right)
    return _reduce_box(req.cut_formula, req.left, req.right, goal)


def _node(goal, rule, kids, label) -> InfProof:
    return InfProof(goal, rule, kids, provenance=label)


def _commute_left(a: Formula, left: InfProof, right: InfProof, goal: Sequent, label: str) -> InfProof:
    """The last inference of ``left`` does not touch the cut formula: permute it down."""
    rule = left.rule
    t, f = rule.tag, rule.principal
    if t == IMP_R:
        return _node(goal, rule, [lambda: reduce_unchecked(a, left.child(0), inv_imp(right, f))],
                     f"{label}:impR")
    if t == IMP_L:
        return _node(goal, rule, [lambda: reduce_unchecked(a, left.child(0), li_imp(right, f)),
                                  lambda: reduce_unchecked(a, left.child(1), ri_imp(right, f))],
                     f"{label}:impL")
    if t == REFL:
        return _node(goal, rule,
                     [lambda: reduce_unchecked(a, left.child(0), weaken(right, Multiset([f.body])))],
                     f"{label}:refl")
    if t == BOX_INF:
        return _node(goal, rule, [lambda: reduce_unchecked(a, left.child(0), li_box(right, f)),
                                  lambda: left.child(1)],
                     f"{label}:box")
    if t == CUT:
        raise NotInP1(f"cut in the main fragment of {left.sequent}")
    raise AssertionError(f"unexpected rule {t}")


def _reduce_atom(p: Formula, left: InfProof, right: InfProof, goal: Sequent) -> InfProof:
    if left.is_leaf:
        if goal.is_initial():
            return InfProof.leaf(goal, "R_atom:initial")
        return contract_atom(right, "left", p)
    return _commute_left(p, left, right, goal, "R_atom")


def _reduce_box(a: Formula, left: InfProof, right: InfProof, goal: Sequent) -> InfProof:
    if left.is_leaf or right.is_leaf:
        return InfProof.leaf(goal, "R_box:initial")
    lr = left.rule
    if not (lr.tag == BOX_INF and lr.principal is a):
        return _commute_left(a, left, right, goal, "R_box")

    rr = right.rule
    t, f = rr.tag, rr.principal
    if t == IMP_R:
        return _node(goal, rr, [lambda: reduce_unchecked(a, inv_imp(left, f), right.child(0))],
                     "R_box:right-impR")
    if t == IMP_L:
        return _node(goal, rr, [lambda: reduce_unchecked(a, li_imp(left, f), right.child(0)),
                                lambda: reduce_unchecked(a, ri_imp(left, f), right.child(1))],
                     "R_box:right-impL")
    if t == REFL:
        if f is a:
            b = a.body
            inner = reduce_unchecked(a, weaken(left, Multiset([b])), right.child(0))
            return reduce_unchecked(b, left.child(0), inner)
        return _node(goal, rr,
                     [lambda: reduce_unchecked(a, weaken(left, Multiset([f.body])), right.child(0))],
                     "R_box:right-refl")
    if t == BOX_INF:
        if a not in rr.boxpi:
            return _node(goal, rr, [lambda: reduce_unchecked(a, li_box(left, f), right.child(0)),
                                    lambda: right.child(1)],
                         "R_box:right-box")
        return _cut_formula_in_boxpi(a, left, right, goal)
    if t == CUT:
        raise NotInP1(f"cut in the main fragment of {right.sequent}")
    raise AssertionError(f"unexpected rule {t}")


def _cut_formula_in_boxpi(a: Formula, left: InfProof, right: InfProof, goal: Sequent) -> InfProof:
    """Both proofs end in BoxInf and the cut formula sits in the right one's boxed context.

    The cut moves above the right premise of a new BoxInf, where it is
    outside the main fragment.
    """
    c_box = right.rule.principal
    c = c_box.body
    pi = left.rule.boxpi
    pi_other = right.rule.boxpi.remove(a)
    joint = pi.union_max(pi_other)

    def cut_left():
        l1 = left.child(1)
        return InfProof(Sequent(joint, [a, c]), RuleInstance(BOX_INF, a, joint),
                        [weaken(l1, joint - pi, Multiset([c])), weaken(l1, joint - pi)],
                        provenance="R_box:boxpi-box")

    def inner_cut():
        return InfProof(Sequent(joint, [c]), RuleInstance(CUT, a),
                        [cut_left, lambda: weaken(right.child(1), joint - pi_other)],
                        provenance="R_box:boxpi-cut")

    return InfProof(goal, RuleInstance(BOX_INF, c_box, joint),
                    [lambda: reduce_unchecked(a, li_box(left, c_box), right.child(0)), inner_cut],
                    provenance="R_box:boxpi")

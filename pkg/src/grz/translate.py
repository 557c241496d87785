"""Translations between the finite calculus and the non-well-founded one."""

from __future__ import annotations

import sys
from dataclasses import dataclass, field

from .cutelim import eliminate
from .errors import BudgetExceeded, CutFound, InvalidProof
from .formula import BOT, EMPTY, Box, Formula, Implies, Multiset, Sequent, lambda_star, subformulas
from .proofs import (AX, AX_BOT, BOX_GRZ, BOX_INF, CUT, DEFAULT_BUDGET, GRZ_SEQ_CUT, IMP_L, IMP_R,
                     REFL, CyclicNode, CyclicProof, Edge, FiniteProof, InfProof, RuleInstance, ax,
                     check_finite, local_height, unfold)
from .transforms import weaken

if sys.getrecursionlimit() < 20_000:
    sys.setrecursionlimit(20_000)


# ---------------------------------------------------------------------------
# generalized axioms

def ax_tree(gamma: Multiset, a: Formula, delta: Multiset) -> FiniteProof:
    """Finite Grz-inf proof of ``gamma, a => a, delta`` with atomic axioms only."""
    gamma, delta = Multiset(gamma), Multiset(delta)
    s = Sequent(gamma.add(a), delta.add(a))
    if a is BOT:
        return FiniteProof(s, RuleInstance(AX_BOT, BOT))
    if a.is_atom:
        return FiniteProof(s, RuleInstance(AX, a))
    if a.is_implication:
        b, c = a.left, a.right
        mid = Sequent(gamma.add(a, b), delta.add(c))
        impl = FiniteProof(mid, RuleInstance(IMP_L, a),
                           (ax_tree(gamma.add(b), c, delta), ax_tree(gamma, b, delta.add(c))))
        return FiniteProof(s, RuleInstance(IMP_R, a), (impl,))
    b = a.body
    right = FiniteProof(Sequent([a], [b]), RuleInstance(REFL, a), (ax_tree(Multiset([a]), b, EMPTY),))
    box = FiniteProof(Sequent(gamma.add(a, b), delta.add(a)), RuleInstance(BOX_INF, a, Multiset([a])),
                      (ax_tree(gamma.add(a), b, delta), right))
    return FiniteProof(s, RuleInstance(REFL, a), (box,))


def ax_expand(gamma: Multiset, a: Formula, delta: Multiset) -> InfProof:
    return InfProof.from_finite(ax_tree(gamma, a, delta), "ax_expand")


# ---------------------------------------------------------------------------
# the cyclic proof of []([](A -> []A) -> A) => A

def grz_formula(a: Formula) -> Formula:
    """``[]([](a -> []a) -> a)``"""
    return Box(Implies(Box(Implies(a, Box(a))), a))


class _Builder:
    def __init__(self):
        self.nodes: list[list] = []

    def new(self, sequent: Sequent, rule: RuleInstance) -> int:
        self.nodes.append([sequent, rule, []])
        return len(self.nodes) - 1

    def link(self, parent: int, child: int, back: bool = False):
        self.nodes[parent][2].append(Edge(child, back))

    def tree(self, pf: FiniteProof) -> int:
        u = self.new(pf.sequent, pf.rule)
        for c in pf.children:
            self.link(u, self.tree(c))
        return u

    def freeze(self, root: int = 0) -> CyclicProof:
        return CyclicProof(tuple(CyclicNode(s, r, tuple(k)) for s, r, k in self.nodes), root)


def grz_schema(a: Formula) -> CyclicProof:
    f = grz_formula(a)
    g = f.body
    h = g.left
    imp = h.body
    boxed_a = Box(a)
    ff = Multiset([f])
    b = _Builder()
    n0 = b.new(Sequent([f], [a]), RuleInstance(REFL, f))
    n1 = b.new(Sequent([f, g], [a]), RuleInstance(IMP_L, g))
    b.link(n0, n1)
    b.link(n1, b.tree(ax_tree(ff, a, EMPTY)))
    n3 = b.new(Sequent([f], [h, a]), RuleInstance(BOX_INF, h, ff))
    b.link(n1, n3)
    n4 = b.new(Sequent([f], [a, imp]), RuleInstance(IMP_R, imp))
    b.link(n3, n4)
    b.link(n4, b.tree(ax_tree(ff, a, Multiset([boxed_a]))))
    n6 = b.new(Sequent([f], [imp]), RuleInstance(IMP_R, imp))
    b.link(n3, n6)
    n7 = b.new(Sequent([f, a], [boxed_a]), RuleInstance(BOX_INF, boxed_a, ff))
    b.link(n6, n7)
    b.link(n7, b.tree(ax_tree(ff, a, EMPTY)))
    b.link(n7, n0, back=True)
    return b.freeze(n0)


# ---------------------------------------------------------------------------
# finite -> non-well-founded

def seq_to_inf(pf: FiniteProof, check: bool = True) -> InfProof:
    if check:
        report = check_finite(pf, GRZ_SEQ_CUT)
        if not report.ok:
            raise InvalidProof(report)
    return _to_inf(pf)


def _to_inf(pf: FiniteProof) -> InfProof:
    s, rule = pf.sequent, pf.rule
    if rule.tag == AX:
        a = rule.principal
        if a.is_atom:
            return InfProof(s, rule, (), "seq_to_inf:ax")
        return ax_expand(s.ant.remove(a), a, s.suc.remove(a))
    if rule.tag == AX_BOT:
        return InfProof(s, rule, (), "seq_to_inf:ax")
    if rule.tag == BOX_GRZ:
        return _grz_step(pf)
    return InfProof(s, rule, [(lambda c=c: _to_inf(c)) for c in pf.children], f"seq_to_inf:{rule.tag}")


def _grz_step(pf: FiniteProof) -> InfProof:
    s, rule = pf.sequent, pf.rule
    box_a = rule.principal
    a = box_a.body
    pi = rule.boxpi
    f = grz_formula(a)
    g = f.body
    xi = _to_inf(pf.children[0])

    def left_of_cut():
        kids = [lambda: InfProof(Sequent(pi, [a, g]), RuleInstance(IMP_R, g),
                                 [weaken(xi, EMPTY, Multiset([a]))], "seq_to_inf:grz"),
                lambda: InfProof(Sequent(pi, [g]), RuleInstance(IMP_R, g), [xi], "seq_to_inf:grz")]
        return InfProof(Sequent(pi, [a, f]), RuleInstance(BOX_INF, f, pi), kids, "seq_to_inf:grz")

    def theta():
        return weaken(unfold(grz_schema(a)), pi)

    lam = InfProof(Sequent(pi, [a]), RuleInstance(CUT, f), [left_of_cut, theta], "seq_to_inf:grz-cut")
    sigma = s.ant.minus(pi)
    rest = s.suc.remove(box_a)
    return InfProof(s, RuleInstance(BOX_INF, box_a, pi),
                    [lambda: weaken(lam, sigma, rest), lam], "seq_to_inf:grz")


# ---------------------------------------------------------------------------
# non-well-founded -> finite

@dataclass
class TranslationContext:
    lam: frozenset = frozenset()
    budget: int = DEFAULT_BUDGET
    trace: list | None = None
    built: int = field(default=0)


def weak_seq(pf: FiniteProof, pi: Multiset = EMPTY, sigma: Multiset = EMPTY) -> FiniteProof:
    """Weakening in the finite calculus; a BoxGrz premise is left alone."""
    pi, sigma = Multiset(pi), Multiset(sigma)
    if not pi and not sigma:
        return pf
    s = Sequent(pf.sequent.ant + pi, pf.sequent.suc + sigma)
    if pf.rule.tag == BOX_GRZ:
        return FiniteProof(s, pf.rule, pf.children)
    return FiniteProof(s, pf.rule, tuple(weak_seq(c, pi, sigma) for c in pf.children))


def inf_to_seq(p: InfProof, ctx: TranslationContext | frozenset | set | None = None) -> FiniteProof:
    """Finite proof of ``lam*, G => D`` from a cut-free proof of ``G => D``."""
    if ctx is None:
        ctx = TranslationContext()
    elif not isinstance(ctx, TranslationContext):
        ctx = TranslationContext(frozenset(ctx))
    root_sub = frozenset(subformulas(p.sequent))
    memo: dict[tuple[int, frozenset], FiniteProof] = {}
    keep: list[InfProof] = []
    return _to_seq(p, frozenset(ctx.lam), ctx, root_sub, memo, keep)


def _to_seq(p, lam, ctx, root_sub, memo, keep) -> FiniteProof:
    key = (id(p), lam)
    hit = memo.get(key)
    if hit is not None:
        return hit
    ctx.built += 1
    if ctx.built > ctx.budget:
        raise BudgetExceeded(f"inf_to_seq built more than {ctx.budget} nodes")
    if ctx.trace is not None:
        ctx.trace.append((len(root_sub - lam), local_height(p), str(p.sequent)))
    star = lambda_star(lam)
    s = Sequent(star + p.sequent.ant, p.sequent.suc)
    rule = p.rule
    t = rule.tag
    if p.is_leaf:
        out = FiniteProof(s, rule)
    elif t == CUT:
        raise CutFound(f"cut on {rule.principal} at {p.sequent}")
    elif t in (IMP_L, IMP_R, REFL):
        out = FiniteProof(s, rule, tuple(_to_seq(c, lam, ctx, root_sub, memo, keep) for c in p.children))
    elif t == BOX_INF:
        box_a = rule.principal
        a = box_a.body
        if a in lam:
            loop = Box(Implies(a, box_a))
            tau = _to_seq(p.child(0), lam, ctx, root_sub, memo, keep)
            s_refl = Sequent(s.ant.add(loop.body), s.suc)
            axiom = FiniteProof(Sequent(s.ant.add(box_a), s.suc), ax(box_a))
            impl = FiniteProof(s_refl, RuleInstance(IMP_L, loop.body),
                               (axiom, weak_seq(tau, EMPTY, Multiset([box_a]))))
            out = FiniteProof(s, RuleInstance(REFL, loop), (impl,))
        else:
            tau = _to_seq(p.child(1), lam | {a}, ctx, root_sub, memo, keep)
            out = FiniteProof(s, RuleInstance(BOX_GRZ, box_a, star + rule.boxpi), (tau,))
    else:
        raise InvalidProof(f"rule {t} cannot occur in a Grz-inf proof")
    memo[key] = out
    keep.append(p)
    return out


# ---------------------------------------------------------------------------
# the whole pipeline

def cutelim_grzseq(pf: FiniteProof, budget: int = DEFAULT_BUDGET) -> FiniteProof:
    """Cut-free finite proof of the same sequent, via the non-well-founded calculus."""
    report = check_finite(pf, GRZ_SEQ_CUT)
    if not report.ok:
        raise InvalidProof(report)
    stage = "seq_to_inf"
    try:
        inf = seq_to_inf(pf, check=False)
        stage = "eliminate"
        normal = eliminate(inf)
        stage = "inf_to_seq"
        return inf_to_seq(normal, TranslationContext(budget=budget))
    except BudgetExceeded as exc:
        raise BudgetExceeded(f"{stage}: {exc}") from None

"""Backward proof search.

``prove_seq`` decides provability in the finite calculus. Sequents are
compared as sets for loop checking, which is sound because contraction is
admissible. Refl fires at most once per boxed formula between two BoxGrz
steps. Every BoxGrz step revisits the finite space of boxed contexts over
the subformulas, so an exhausted search is a definitive failure.

``prove_inf`` is a best-effort search for cyclic proofs. A back-edge is
formed when a goal repeats an ancestor goal exactly and a right premise of
BoxInf lies in between. The result is always re-checked.
"""

from __future__ import annotations

from dataclasses import dataclass

from .formula import BOT, Box, Implies, Multiset, Sequent
from .proofs import (AX, AX_BOT, BOX_GRZ, BOX_INF, GRZ_INF, GRZ_SEQ, IMP_L, IMP_R, REFL, CyclicProof,
                     FiniteProof, RuleInstance, check_cyclic, check_finite)
from .translate import _Builder

PROVED = "proved"
UNPROVABLE = "unprovable"
UNKNOWN = "unknown"


@dataclass
class SearchResult:
    status: str
    proof: FiniteProof | CyclicProof | None
    nodes: int

    @property
    def proved(self) -> bool:
        return self.status == PROVED


class _Limit(Exception):
    pass


@dataclass
class Limits:
    nodes: int = 200_000
    depth: int = 400


def _closing_rule(s: Sequent, atomic_only: bool) -> RuleInstance | None:
    if BOT in s.ant:
        return RuleInstance(AX_BOT, BOT)
    for f in s.ant.distinct():
        if f in s.suc and (f.is_atom or not atomic_only):
            return RuleInstance(AX, f)
    return None


def _first_implication(m: Multiset):
    for f in m.distinct():
        if f.is_implication:
            return f
    return None


class _SeqSearch:
    def __init__(self, limits: Limits):
        self.limits = limits
        self.nodes = 0

    def tick(self, depth: int):
        self.nodes += 1
        if self.nodes > self.limits.nodes or depth > self.limits.depth:
            raise _Limit()

    def run(self, s: Sequent, history: frozenset, used: frozenset, depth: int) -> FiniteProof | None:
        self.tick(depth)
        rule = _closing_rule(s, atomic_only=False)
        if rule is not None:
            return FiniteProof(s, rule)
        f = _first_implication(s.suc)
        if f is not None:
            kid = self.run(Sequent(s.ant.add(f.left), s.suc.remove(f).add(f.right)), history, used, depth + 1)
            return None if kid is None else FiniteProof(s, RuleInstance(IMP_R, f), (kid,))
        f = _first_implication(s.ant)
        if f is not None:
            rest = s.ant.remove(f)
            left = self.run(Sequent(rest.add(f.right), s.suc), history, used, depth + 1)
            if left is None:
                return None
            right = self.run(Sequent(rest, s.suc.add(f.left)), history, used, depth + 1)
            if right is None:
                return None
            return FiniteProof(s, RuleInstance(IMP_L, f), (left, right))
        for f in s.ant.distinct():
            if f.is_box and f not in used and f.body not in s.ant:
                kid = self.run(Sequent(s.ant.add(f.body), s.suc), history, used | {f}, depth + 1)
                return None if kid is None else FiniteProof(s, RuleInstance(REFL, f), (kid,))
        key = s.set_key()
        if key in history:
            return None
        history = history | {key}
        pi = Multiset(s.ant.boxed().support())
        for f in s.suc.distinct():
            if not f.is_box:
                continue
            premise = Sequent(pi.add(Box(Implies(f.body, f))), [f.body])
            kid = self.run(premise, history, frozenset(), depth + 1)
            if kid is not None:
                return FiniteProof(s, RuleInstance(BOX_GRZ, f, pi), (kid,))
        return None


def prove_seq(goal: Sequent, limit_nodes: int = 200_000, max_depth: int = 400) -> SearchResult:
    search = _SeqSearch(Limits(limit_nodes, max_depth))
    try:
        pf = search.run(goal, frozenset(), frozenset(), 0)
    except _Limit:
        return SearchResult(UNKNOWN, None, search.nodes)
    except RecursionError:
        return SearchResult(UNKNOWN, None, search.nodes)
    if pf is None:
        return SearchResult(UNPROVABLE, None, search.nodes)
    report = check_finite(pf, GRZ_SEQ)
    if not report.ok or pf.sequent != goal:
        raise AssertionError(f"search produced an invalid proof: {report}")
    return SearchResult(PROVED, pf, search.nodes)


# ---------------------------------------------------------------------------
# cyclic search

@dataclass
class _Frame:
    sequent: Sequent
    rule: RuleInstance | None = None
    kids: list | None = None


class _InfSearch:
    def __init__(self, limits: Limits):
        self.limits = limits
        self.nodes = 0

    def run(self, s: Sequent, path: list[_Frame], crossed_since: list[bool]):
        """Returns a frame tree or ``None``.

        ``crossed_since[i]`` tells whether a BoxInf right premise lies between
        ``path[i]`` and the current goal.
        """
        self.nodes += 1
        if self.nodes > self.limits.nodes or len(path) > self.limits.depth:
            raise _Limit()
        for i, anc in enumerate(path):
            if anc.sequent == s:
                return ("back", anc) if crossed_since[i] else None
        rule = _closing_rule(s, atomic_only=True)
        if rule is not None:
            return _Frame(s, rule, [])
        me = _Frame(s)
        alternatives = []
        f = _first_implication(s.suc)
        if f is not None:
            alternatives.append((RuleInstance(IMP_R, f),
                                 [Sequent(s.ant.add(f.left), s.suc.remove(f).add(f.right))]))
        else:
            f = _first_implication(s.ant)
            if f is not None:
                rest = s.ant.remove(f)
                alternatives.append((RuleInstance(IMP_L, f),
                                     [Sequent(rest.add(f.right), s.suc), Sequent(rest, s.suc.add(f.left))]))
            else:
                pi = s.ant.boxed()
                for g in s.suc.distinct():
                    if g.is_box:
                        alternatives.append((RuleInstance(BOX_INF, g, pi),
                                             [Sequent(s.ant, s.suc.remove(g).add(g.body)),
                                              Sequent(pi, [g.body])]))
                for g in s.ant.distinct():
                    if g.is_box and g.body not in s.ant:
                        alternatives.append((RuleInstance(REFL, g), [Sequent(s.ant.add(g.body), s.suc)]))
        for rule, premises in alternatives:
            me.rule = rule
            kids = []
            for i, prem in enumerate(premises):
                right = rule.tag == BOX_INF and i == 1
                sub = self.run(prem, path + [me],
                               [c or right for c in crossed_since] + [right])
                if sub is None:
                    break
                kids.append(sub)
            else:
                me.kids = kids
                return me
        return None


def _freeze(root: _Frame) -> CyclicProof:
    b = _Builder()
    index: dict[int, int] = {}

    def walk(fr: _Frame) -> int:
        u = b.new(fr.sequent, fr.rule)
        index[id(fr)] = u
        for k in fr.kids:
            if isinstance(k, tuple):
                b.link(u, index[id(k[1])], back=True)
            else:
                b.link(u, walk(k))
        return u

    walk(root)
    return b.freeze(0)


def prove_inf(goal: Sequent, limit_nodes: int = 200_000, max_depth: int = 200) -> SearchResult:
    search = _InfSearch(Limits(limit_nodes, max_depth))
    try:
        tree = search.run(goal, [], [])
    except (_Limit, RecursionError):
        return SearchResult(UNKNOWN, None, search.nodes)
    if tree is None:
        return SearchResult(UNKNOWN, None, search.nodes)
    cp = _freeze(tree)
    report = check_cyclic(cp, GRZ_INF)
    if not report.ok:
        return SearchResult(UNKNOWN, None, search.nodes)
    return SearchResult(PROVED, cp, search.nodes)

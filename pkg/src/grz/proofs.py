"""Proof objects for both calculi and the observation machinery on them.

Three representations share one node vocabulary (sequent + :class:`RuleInstance`):

* :class:`FiniteProof` -- an ordinary finite tree; leaves may be :class:`Hole`
  when the tree is a depth-bounded expansion of a non-well-founded proof.
* :class:`CyclicProof` -- a finite tree with back-edges to ancestors.
* :class:`InfProof` -- a demand-driven tree whose children are computed on
  first access and then cached.

The depth index used by ``sim_n``, ``in_P_n`` and ``expand`` drops by one
exactly when crossing the right premise of a ``BoxInf`` inference.
"""

from __future__ import annotations

import graphlib
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Sequence, Union

from .errors import BudgetExceeded, InapplicableRule, InvalidProof, MultisetError
from .formula import BOT, Box, Formula, Implies, Multiset, Sequent

AX = "Ax"
AX_BOT = "AxBot"
IMP_L = "ImpL"
IMP_R = "ImpR"
REFL = "Refl"
BOX_INF = "BoxInf"
BOX_GRZ = "BoxGrz"
CUT = "Cut"
TAGS = (AX, AX_BOT, IMP_L, IMP_R, REFL, BOX_INF, BOX_GRZ, CUT)
AXIOMS = (AX, AX_BOT)

GRZ_SEQ = "grz-seq"
GRZ_SEQ_CUT = "grz-seq-cut"
GRZ_INF = "grz-inf"
GRZ_INF_CUT = "grz-inf-cut"

ALLOWED = {
    GRZ_SEQ: {AX, AX_BOT, IMP_L, IMP_R, REFL, BOX_GRZ},
    GRZ_SEQ_CUT: {AX, AX_BOT, IMP_L, IMP_R, REFL, BOX_GRZ, CUT},
    GRZ_INF: {AX, AX_BOT, IMP_L, IMP_R, REFL, BOX_INF},
    GRZ_INF_CUT: {AX, AX_BOT, IMP_L, IMP_R, REFL, BOX_INF, CUT},
}
_SYSTEM_ALIASES = {
    "GrzSeq": GRZ_SEQ, "GrzSeqCut": GRZ_SEQ_CUT, "GrzInf": GRZ_INF, "GrzInfCut": GRZ_INF_CUT,
    "seq": GRZ_SEQ, "seq-cut": GRZ_SEQ_CUT, "inf": GRZ_INF, "inf-cut": GRZ_INF_CUT,
}

DEFAULT_BUDGET = 100_000


def normalize_system(system: str) -> str:
    system = _SYSTEM_ALIASES.get(system, system)
    if system not in ALLOWED:
        raise ValueError(f"unknown proof system {system!r}")
    return system


@dataclass(frozen=True)
class RuleInstance:
    """Rule tag plus the data needed to rebuild the premises from a conclusion.

    ``principal`` is the formula the rule acts on (the cut formula for Cut);
    ``boxpi`` is the boxed context carried into the premise of BoxInf/BoxGrz.
    """

    tag: str
    principal: Formula | None = None
    boxpi: Multiset | None = None

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown rule tag {self.tag!r}")

    def __str__(self) -> str:
        parts = [self.tag]
        if self.principal is not None:
            parts.append(str(self.principal))
        if self.boxpi is not None:
            parts.append("{" + ", ".join(map(str, self.boxpi)) + "}")
        return " ".join(parts)

    @property
    def is_axiom(self) -> bool:
        return self.tag in AXIOMS


def ax(principal: Formula) -> RuleInstance:
    return RuleInstance(AX_BOT if principal is BOT else AX, principal)


def axiom_for(s: Sequent) -> RuleInstance:
    """Axiom instance closing ``s`` in the non-well-founded calculus."""
    p = s.initial_principal()
    if p is None:
        raise InapplicableRule(f"{s} is not an initial sequent")
    return ax(p)


def premises_of(rule: RuleInstance, s: Sequent) -> list[Sequent]:
    t, a = rule.tag, rule.principal
    try:
        if t == AX:
            if a is None or a not in s.ant or a not in s.suc:
                raise InapplicableRule(f"axiom formula {a} must occur on both sides of {s}")
            return []
        if t == AX_BOT:
            if BOT not in s.ant:
                raise InapplicableRule(f"bot does not occur in the antecedent of {s}")
            return []
        if t == CUT:
            if a is None:
                raise InapplicableRule("cut needs a cut formula")
            return [Sequent(s.ant, s.suc.add(a)), Sequent(s.ant.add(a), s.suc)]
        if a is None:
            raise InapplicableRule(f"{t} needs a principal formula")
        if t == IMP_L:
            if not a.is_implication:
                raise InapplicableRule(f"ImpL principal {a} is not an implication")
            rest = s.ant.remove(a)
            return [Sequent(rest.add(a.right), s.suc), Sequent(rest, s.suc.add(a.left))]
        if t == IMP_R:
            if not a.is_implication:
                raise InapplicableRule(f"ImpR principal {a} is not an implication")
            return [Sequent(s.ant.add(a.left), s.suc.remove(a).add(a.right))]
        if t == REFL:
            if not a.is_box:
                raise InapplicableRule(f"Refl principal {a} is not boxed")
            if a not in s.ant:
                raise InapplicableRule(f"Refl principal {a} not in antecedent of {s}")
            return [Sequent(s.ant.add(a.body), s.suc)]
        if t in (BOX_INF, BOX_GRZ):
            if not a.is_box:
                raise InapplicableRule(f"{t} principal {a} is not boxed")
            pi = rule.boxpi if rule.boxpi is not None else Multiset()
            if any(not f.is_box for f in pi.support()):
                raise InapplicableRule(f"{t} context {pi} contains an unboxed formula")
            if not pi <= s.ant:
                raise InapplicableRule(f"{t} context {pi} is not part of the antecedent of {s}")
            rest_suc = s.suc.remove(a)
            b = a.body
            if t == BOX_INF:
                return [Sequent(s.ant, rest_suc.add(b)), Sequent(pi, [b])]
            return [Sequent(pi.add(Box(Implies(b, Box(b)))), [b])]
    except MultisetError as exc:
        raise InapplicableRule(f"{t} {a}: {exc}") from None
    raise InapplicableRule(f"unknown rule {t}")


def check_instance(system: str, s: Sequent, rule: RuleInstance,
                   child_sequents: Sequence[Sequent] | None) -> list[str]:
    """Problems with one inference; empty when it is a correct instance."""
    problems = []
    if rule.tag not in ALLOWED[system]:
        if rule.tag == CUT:
            problems.append("cut not allowed")
        else:
            problems.append(f"rule {rule.tag} not allowed in {system}")
        return problems
    if rule.tag == AX and system in (GRZ_INF, GRZ_INF_CUT) and (
            rule.principal is None or not rule.principal.is_atom):
        problems.append(f"non-atomic axiom in Grz-inf ({rule.principal})")
        return problems
    try:
        prem = premises_of(rule, s)
    except InapplicableRule as exc:
        return [str(exc)]
    if child_sequents is not None:
        if len(prem) != len(child_sequents):
            problems.append(f"{rule.tag} needs {len(prem)} premises, got {len(child_sequents)}")
        else:
            for i, (want, got) in enumerate(zip(prem, child_sequents)):
                if want != got:
                    problems.append(f"premise {i} should be {want}, found {got}")
    return problems


@dataclass(frozen=True)
class Violation:
    where: str
    message: str

    def __str__(self) -> str:
        return f"{self.where}: {self.message}"


@dataclass
class ValidationReport:
    system: str
    violations: list[Violation] = field(default_factory=list)
    nodes_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return f"valid ({self.system}, {self.nodes_checked} nodes)"
        extra = f" (+{len(self.violations) - 1} more)" if len(self.violations) > 1 else ""
        return f"invalid ({self.system}): {self.violations[0]}{extra}"


# ---------------------------------------------------------------------------
# finite trees

@dataclass(frozen=True)
class Hole:
    """Unexpanded subtree of a depth-bounded expansion."""

    sequent: Sequent


@dataclass(frozen=True, eq=True)
class FiniteProof:
    sequent: Sequent
    rule: RuleInstance
    children: tuple[Union["FiniteProof", Hole], ...] = ()

    def walk(self) -> Iterator[tuple[str, Union["FiniteProof", Hole]]]:
        """Pre-order ``(path, node)`` pairs; paths are dotted child indices."""
        stack: list[tuple[str, FiniteProof | Hole]] = [("root", self)]
        while stack:
            path, node = stack.pop()
            yield path, node
            if isinstance(node, FiniteProof):
                for i in reversed(range(len(node.children))):
                    stack.append((f"{path}.{i}", node.children[i]))

    def size(self) -> int:
        return sum(1 for _, n in self.walk() if isinstance(n, FiniteProof))

    def holes(self) -> int:
        return sum(1 for _, n in self.walk() if isinstance(n, Hole))

    def count(self, tag: str) -> int:
        return sum(1 for _, n in self.walk() if isinstance(n, FiniteProof) and n.rule.tag == tag)

    def height(self) -> int:
        """Edges on the longest root-to-leaf path (holes count as leaves)."""
        best = 0
        stack = [(self, 0)]
        while stack:
            node, d = stack.pop()
            best = max(best, d)
            if isinstance(node, FiniteProof):
                stack.extend((c, d + 1) for c in node.children)
        return best

    def map_sequents(self, fn: Callable[[Sequent], Sequent]) -> "FiniteProof":
        kids = tuple(Hole(fn(c.sequent)) if isinstance(c, Hole) else c.map_sequents(fn)
                     for c in self.children)
        return FiniteProof(fn(self.sequent), self.rule, kids)


def check_finite(pf: FiniteProof, system: str = GRZ_SEQ_CUT, allow_holes: bool = False) -> ValidationReport:
    system = normalize_system(system)
    report = ValidationReport(system)
    for path, node in pf.walk():
        if isinstance(node, Hole):
            if not allow_holes:
                report.violations.append(Violation(path, "open leaf (hole)"))
            continue
        report.nodes_checked += 1
        kids = [c.sequent for c in node.children]
        for msg in check_instance(system, node.sequent, node.rule, kids):
            report.violations.append(Violation(path, msg))
    return report


# ---------------------------------------------------------------------------
# cyclic presentations

@dataclass(frozen=True)
class Edge:
    target: int
    back: bool = False


@dataclass(frozen=True)
class CyclicNode:
    sequent: Sequent
    rule: RuleInstance
    children: tuple[Edge, ...] = ()


@dataclass(frozen=True)
class CyclicProof:
    nodes: tuple[CyclicNode, ...]
    root: int = 0

    @property
    def sequent(self) -> Sequent:
        return self.nodes[self.root].sequent

    def back_edges(self) -> list[tuple[int, int, int]]:
        """``(source, child index, target)`` for every back-edge."""
        return [(u, i, e.target) for u, n in enumerate(self.nodes)
                for i, e in enumerate(n.children) if e.back]


def _tree_structure(cp: CyclicProof, report: ValidationReport) -> dict[int, int | None] | None:
    n = len(cp.nodes)
    parent: dict[int, int | None] = {}
    if not 0 <= cp.root < n:
        report.violations.append(Violation("graph", f"root {cp.root} out of range"))
        return None
    for u, node in enumerate(cp.nodes):
        for e in node.children:
            if not 0 <= e.target < n:
                report.violations.append(Violation(f"node {u}", f"edge to missing node {e.target}"))
    if report.violations:
        return None
    parent[cp.root] = None
    order = [cp.root]
    stack = [cp.root]
    while stack:
        u = stack.pop()
        for e in cp.nodes[u].children:
            if e.back:
                continue
            v = e.target
            if v in parent:
                report.violations.append(
                    Violation(f"node {u}", f"node {v} has more than one tree parent"))
                return None
            parent[v] = u
            order.append(v)
            stack.append(v)
    unreachable = sorted(set(range(n)) - set(parent))
    if unreachable:
        report.violations.append(Violation("graph", f"nodes not reachable from root: {unreachable}"))
    return parent


def node_path(parent: dict[int, int | None], u: int) -> list[int]:
    path = [u]
    while parent.get(path[-1]) is not None:
        path.append(parent[path[-1]])
    return path[::-1]


def check_cyclic(cp: CyclicProof, system: str = GRZ_INF) -> ValidationReport:
    system = normalize_system(system)
    report = ValidationReport(system)
    parent = _tree_structure(cp, report)
    if parent is None:
        return report

    for u, i, v in cp.back_edges():
        if u not in parent:
            continue
        ancestors = node_path(parent, u)[:-1]
        if v not in ancestors:
            report.violations.append(
                Violation(f"node {u}", f"back-edge {i} targets node {v}, which is not a strict ancestor"))

    for u, node in enumerate(cp.nodes):
        report.nodes_checked += 1
        kids = [cp.nodes[e.target].sequent for e in node.children]
        for msg in check_instance(system, node.sequent, node.rule, kids):
            report.violations.append(Violation(f"node {u}", msg))

    # Every cycle must use a right-premise edge of BoxInf: dropping those edges
    # must leave an acyclic graph.
    graph: dict[int, set[int]] = {u: set() for u in range(len(cp.nodes))}
    for u, node in enumerate(cp.nodes):
        for i, e in enumerate(node.children):
            if node.rule.tag == BOX_INF and i == 1:
                continue
            graph[e.target].add(u)
    try:
        tuple(graphlib.TopologicalSorter(graph).static_order())
    except graphlib.CycleError as exc:
        cycle = exc.args[1] if len(exc.args) > 1 else []
        report.violations.append(Violation(
            f"node {cycle[0] if cycle else '?'}",
            f"cycle without box-right edge through nodes {sorted(set(cycle))}"))
    return report


# ---------------------------------------------------------------------------
# demand-driven proofs

_force_lock = threading.RLock()

Thunk = Callable[[], "InfProof"]


class InfProof:
    """A possibly infinite proof whose children are produced on demand.

    Each child is computed at most once; forcing is serialized by a module
    lock so the cache is safe to share between threads.
    """

    __slots__ = ("sequent", "rule", "provenance", "_kids")

    def __init__(self, sequent: Sequent, rule: RuleInstance,
                 children: Sequence[Union["InfProof", Thunk]] = (), provenance: str = "literal"):
        self.sequent = sequent
        self.rule = rule
        self.provenance = provenance
        self._kids = list(children)

    def __repr__(self) -> str:
        return f"<InfProof {self.sequent} by {self.rule.tag} [{self.provenance}]>"

    @classmethod
    def leaf(cls, sequent: Sequent, provenance: str = "literal") -> "InfProof":
        return cls(sequent, axiom_for(sequent), (), provenance)

    @property
    def arity(self) -> int:
        return len(self._kids)

    @property
    def is_leaf(self) -> bool:
        return not self._kids

    def child(self, i: int) -> "InfProof":
        k = self._kids[i]
        if isinstance(k, InfProof):
            return k
        with _force_lock:
            k = self._kids[i]
            if not isinstance(k, InfProof):
                k = k()
                if not isinstance(k, InfProof):
                    raise TypeError(f"thunk produced {type(k).__name__}, not InfProof")
                self._kids[i] = k
        return k

    @property
    def children(self) -> tuple["InfProof", ...]:
        return tuple(self.child(i) for i in range(len(self._kids)))

    def is_forced(self, i: int) -> bool:
        return isinstance(self._kids[i], InfProof)

    def premise_sequent(self, i: int) -> Sequent:
        """Sequent of child ``i`` without forcing it."""
        k = self._kids[i]
        if isinstance(k, InfProof):
            return k.sequent
        return premises_of(self.rule, self.sequent)[i]

    @classmethod
    def from_finite(cls, pf: FiniteProof, provenance: str = "literal") -> "InfProof":
        if any(isinstance(c, Hole) for c in pf.children):
            raise ValueError("cannot convert a tree with holes")
        return cls(pf.sequent, pf.rule,
                   [(lambda c=c: cls.from_finite(c, provenance)) for c in pf.children], provenance)


def is_right_premise(p: InfProof, i: int) -> bool:
    return p.rule.tag == BOX_INF and i == 1


def unfold(cp: CyclicProof, system: str = GRZ_INF_CUT) -> InfProof:
    """Demand-driven unfolding; one InfProof object per graph node."""
    report = check_cyclic(cp, system)
    if not report.ok:
        raise InvalidProof(report)
    cache: dict[int, InfProof] = {}

    def get(u: int) -> InfProof:
        if u not in cache:
            node = cp.nodes[u]
            cache[u] = InfProof(node.sequent, node.rule,
                                [(lambda e=e: get(e.target)) for e in node.children],
                                provenance=f"cyclic:{u}")
        return cache[u]

    return get(cp.root)


# ---------------------------------------------------------------------------
# observation

def _levels(p: InfProof, m: int) -> list[tuple[int, int]]:
    return [(i, m - 1 if is_right_premise(p, i) else m) for i in range(p.arity)]


def expand(p: InfProof, n: int, budget: int = DEFAULT_BUDGET) -> FiniteProof | Hole:
    """Finite tree of everything visible before the n-th right-premise crossing."""
    if n <= 0:
        return Hole(p.sequent)
    memo: dict[tuple[int, int], FiniteProof | Hole] = {}
    keep: list[InfProof] = []
    in_progress: set[tuple[int, int]] = set()
    stack = [(p, n)]
    built = 0
    while stack:
        q, m = stack[-1]
        key = (id(q), m)
        if key in memo:
            stack.pop()
            continue
        plan = _levels(q, m)
        pending = []
        for i, lvl in plan:
            if lvl > 0:
                c = q.child(i)
                if (id(c), lvl) not in memo:
                    pending.append((c, lvl))
        if pending:
            if key in in_progress:
                raise BudgetExceeded(f"non-productive proof: cycle at {q.sequent} without right-premise crossing")
            in_progress.add(key)
            stack.extend(reversed(pending))
            continue
        kids = []
        for i, lvl in plan:
            if lvl > 0:
                kids.append(memo[(id(q.child(i)), lvl)])
            else:
                kids.append(Hole(q.premise_sequent(i)))
        memo[key] = FiniteProof(q.sequent, q.rule, tuple(kids))
        keep.append(q)
        in_progress.discard(key)
        stack.pop()
        built += 1
        if built > budget:
            raise BudgetExceeded(f"more than {budget} nodes materialized")
    return memo[(id(p), n)]


def main_fragment(p: InfProof, node_budget: int = DEFAULT_BUDGET) -> FiniteProof:
    return expand(p, 1, node_budget)


def local_height(p: InfProof, node_budget: int = DEFAULT_BUDGET) -> int:
    """Longest branch of the main fragment; holes are not counted as nodes."""
    mf = main_fragment(p, node_budget)
    best = 0
    stack = [(mf, 0)]
    while stack:
        node, d = stack.pop()
        best = max(best, d)
        for c in node.children:
            if isinstance(c, FiniteProof):
                stack.append((c, d + 1))
    return best


def _same_instance(p: InfProof, q: InfProof) -> bool:
    if p.sequent != q.sequent:
        return False
    if p.is_leaf or q.is_leaf:
        return p.is_leaf and q.is_leaf
    return p.rule == q.rule


def sim_n(p: InfProof, q: InfProof, n: int, budget: int = DEFAULT_BUDGET) -> bool:
    """Agreement of two proofs up to the n-th right-premise crossing."""
    seen: set[tuple[int, int, int]] = set()
    stack = [(p, q, n)]
    steps = 0
    while stack:
        a, b, m = stack.pop()
        if m == 0 or a is b:
            continue
        key = (id(a), id(b), m)
        if key in seen:
            continue
        seen.add(key)
        steps += 1
        if steps > budget:
            raise BudgetExceeded(f"more than {budget} node pairs compared")
        if not _same_instance(a, b):
            return False
        for i, lvl in _levels(a, m):
            if lvl > 0:
                stack.append((a.child(i), b.child(i), lvl))
    return True


@dataclass(frozen=True)
class Distance:
    """``2^-exponent`` when ``exact``; otherwise only the bound ``<= 2^-exponent``."""

    exponent: int
    exact: bool

    @property
    def upper(self) -> Fraction:
        return Fraction(1, 2 ** self.exponent)

    def __str__(self) -> str:
        return f"{'' if self.exact else '<= '}2^-{self.exponent}"


def distance(p: InfProof, q: InfProof, max_n: int, budget: int = DEFAULT_BUDGET) -> Distance:
    for k in range(1, max_n + 1):
        if not sim_n(p, q, k, budget):
            return Distance(k - 1, True)
    return Distance(max_n, False)


def in_P_n(p: InfProof, n: int, budget: int = DEFAULT_BUDGET) -> bool:
    """No cut before the n-th right-premise crossing on any branch."""
    seen: set[tuple[int, int]] = set()
    stack = [(p, n)]
    while stack:
        q, m = stack.pop()
        if m == 0:
            continue
        key = (id(q), m)
        if key in seen:
            continue
        seen.add(key)
        if len(seen) > budget:
            raise BudgetExceeded(f"more than {budget} nodes visited")
        if q.rule.tag == CUT:
            return False
        for i, lvl in _levels(q, m):
            if lvl > 0:
                stack.append((q.child(i), lvl))
    return True


def check_inf(p: InfProof, depth: int, system: str = GRZ_INF, budget: int = DEFAULT_BUDGET) -> ValidationReport:
    """Rule-by-rule validation of everything before the depth-th crossing."""
    system = normalize_system(system)
    report = ValidationReport(system)
    best: dict[int, int] = {}
    keep = []
    stack = [(p, depth, "root")]
    while stack:
        q, m, path = stack.pop()
        if m <= 0 or best.get(id(q), 0) >= m:
            continue
        best[id(q)] = m
        keep.append(q)
        report.nodes_checked += 1
        if report.nodes_checked > budget:
            raise BudgetExceeded(f"more than {budget} nodes checked")
        kids = q.children
        for msg in check_instance(system, q.sequent, q.rule, [c.sequent for c in kids]):
            report.violations.append(Violation(path, msg))
        for i, lvl in _levels(q, m):
            stack.append((kids[i], lvl, f"{path}.{i}"))
    return report


def cut_profile(p: InfProof, depth: int, budget: int = DEFAULT_BUDGET) -> list[int]:
    """Number of distinct cut nodes seen at each level ``depth, depth-1, ..., 1``."""
    counts = [0] * depth
    seen: set[tuple[int, int]] = set()
    stack = [(p, depth)]
    while stack:
        q, m = stack.pop()
        if m <= 0 or (id(q), m) in seen:
            continue
        seen.add((id(q), m))
        if len(seen) > budget:
            raise BudgetExceeded(f"more than {budget} nodes visited")
        if q.rule.tag == CUT:
            counts[depth - m] += 1
        for i, lvl in _levels(q, m):
            stack.append((q.child(i), lvl))
    return counts

"""Proof transformers for weakening, the inversion rules and atomic contraction.

Every transformer follows the traced occurrence through the main fragment.
It stops at the inference where that occurrence is principal and returns the
premise that already proves the target sequent. Right premises of BoxInf are
shared with the input unchanged. That is what keeps the mappings
nonexpansive and the local height from growing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InapplicableRule, MultisetError, ShapeError
from .formula import BOT, EMPTY, Formula, Multiset, Sequent
from .proofs import BOX_INF, IMP_L, IMP_R, InfProof, axiom_for, is_right_premise, premises_of

KINDS = ("wk", "li_imp", "ri_imp", "inv_imp", "inv_bot", "li_box", "acl", "acr")


@dataclass(frozen=True)
class TransformSpec:
    kind: str
    formula: Formula | None = None
    pi: Multiset = EMPTY
    sigma: Multiset = EMPTY

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown transform kind {self.kind!r}")
        needs = {"li_imp": "implication", "ri_imp": "implication", "inv_imp": "implication",
                 "li_box": "box", "acl": "atom", "acr": "atom"}.get(self.kind)
        f = self.formula
        if self.kind == "inv_bot" and f not in (None, BOT):
            raise ValueError("inv_bot takes no formula")
        if needs == "implication" and (f is None or not f.is_implication):
            raise ValueError(f"{self.kind} needs an implication, got {f}")
        if needs == "box" and (f is None or not f.is_box):
            raise ValueError(f"{self.kind} needs a boxed formula, got {f}")
        if needs == "atom" and (f is None or not f.is_atom):
            raise ValueError(f"{self.kind} needs an atom, got {f}")


@dataclass(frozen=True)
class _Delta:
    remove_ant: Multiset = EMPTY
    add_ant: Multiset = EMPTY
    remove_suc: Multiset = EMPTY
    add_suc: Multiset = EMPTY

    def apply(self, s: Sequent) -> Sequent:
        return Sequent(s.ant.minus(self.remove_ant) + self.add_ant,
                       s.suc.minus(self.remove_suc) + self.add_suc)


def _plan(spec: TransformSpec) -> tuple[_Delta, str | None, int]:
    """Sequent change, the tag at which to splice, and the premise returned there."""
    f = spec.formula
    k = spec.kind
    if k == "wk":
        return _Delta(add_ant=spec.pi, add_suc=spec.sigma), None, 0
    if k == "li_imp":
        return _Delta(remove_ant=Multiset([f]), add_ant=Multiset([f.right])), IMP_L, 0
    if k == "ri_imp":
        return _Delta(remove_ant=Multiset([f]), add_suc=Multiset([f.left])), IMP_L, 1
    if k == "inv_imp":
        return _Delta(remove_suc=Multiset([f]), add_ant=Multiset([f.left]),
                      add_suc=Multiset([f.right])), IMP_R, 0
    if k == "inv_bot":
        return _Delta(remove_suc=Multiset([BOT])), None, 0
    if k == "li_box":
        return _Delta(remove_suc=Multiset([f]), add_suc=Multiset([f.body])), BOX_INF, 0
    if k == "acl":
        return _Delta(remove_ant=Multiset([f])), None, 0
    return _Delta(remove_suc=Multiset([f])), None, 0


def _run(p: InfProof, delta: _Delta, splice_tag: str | None, splice_at: int,
         target: Formula | None, label: str) -> InfProof:
    try:
        goal = delta.apply(p.sequent)
    except MultisetError as exc:
        raise ShapeError(f"{label}: {p.sequent} has the wrong shape ({exc})") from None
    if p.is_leaf:
        if not p.sequent.is_initial():
            raise ShapeError(f"{label}: leaf {p.sequent} is not an initial sequent")
        rule = p.rule
        try:
            premises_of(rule, goal)
        except InapplicableRule:
            rule = axiom_for(goal)
        return InfProof(goal, rule, (), label)
    if splice_tag is not None and p.rule.tag == splice_tag and p.rule.principal is target:
        return p.child(splice_at)

    def kid(i):
        if is_right_premise(p, i):
            return lambda: p.child(i)
        return lambda: _run(p.child(i), delta, splice_tag, splice_at, target, label)

    return InfProof(goal, p.rule, [kid(i) for i in range(p.arity)], label)


def apply_transform(p: InfProof, spec: TransformSpec) -> InfProof:
    delta, tag, at = _plan(spec)
    if spec.kind == "wk" and not spec.pi and not spec.sigma:
        return p
    if spec.kind == "acl" and p.sequent.ant.count(spec.formula) < 2:
        raise ShapeError(f"acl: {spec.formula} does not occur twice in the antecedent of {p.sequent}")
    if spec.kind == "acr" and p.sequent.suc.count(spec.formula) < 2:
        raise ShapeError(f"acr: {spec.formula} does not occur twice in the succedent of {p.sequent}")
    return _run(p, delta, tag, at, spec.formula, spec.kind)


def weaken(p: InfProof, pi: Multiset = EMPTY, sigma: Multiset = EMPTY) -> InfProof:
    return apply_transform(p, TransformSpec("wk", pi=Multiset(pi), sigma=Multiset(sigma)))


def invert(p: InfProof, spec: TransformSpec) -> InfProof:
    if spec.kind in ("wk", "acl", "acr"):
        raise ValueError(f"{spec.kind} is not an inversion")
    return apply_transform(p, spec)


def li_imp(p: InfProof, f: Formula) -> InfProof:
    return apply_transform(p, TransformSpec("li_imp", f))


def ri_imp(p: InfProof, f: Formula) -> InfProof:
    return apply_transform(p, TransformSpec("ri_imp", f))


def inv_imp(p: InfProof, f: Formula) -> InfProof:
    return apply_transform(p, TransformSpec("inv_imp", f))


def inv_bot(p: InfProof) -> InfProof:
    return apply_transform(p, TransformSpec("inv_bot"))


def li_box(p: InfProof, f: Formula) -> InfProof:
    return apply_transform(p, TransformSpec("li_box", f))


def contract_atom(p: InfProof, side: str, atom: Formula) -> InfProof:
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if not atom.is_atom:
        raise ShapeError(f"contraction is only available for atoms, not {atom}")
    return apply_transform(p, TransformSpec("acl" if side == "left" else "acr", atom))

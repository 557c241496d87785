"""Test and demo material: the bundled cyclic proof, formula generators,
Hilbert axiom instances and proofs with cuts."""

from __future__ import annotations

import itertools
import json
import random
from importlib import resources

from .formula import (BOT, EMPTY, Atom, Box, Formula, Implies, Multiset, Sequent, modal_depth, neg,
                      parse_formula, subformulas)
from .proofs import CUT, CyclicProof, FiniteProof, InfProof, RuleInstance, unfold
from .search import prove_seq
from .serialize import from_json
from .transforms import weaken
from .translate import ax_expand, grz_formula, grz_schema, seq_to_inf, weak_seq

P, Q = Atom("p"), Atom("q")


def golden_proof() -> CyclicProof:
    """The cyclic proof of ``[]([](p -> []p) -> p) => p`` shipped with the package."""
    text = resources.files("grz").joinpath("data/golden_grz_p.json").read_text()
    return from_json(json.loads(text))


def random_formula(rng: random.Random, depth: int, atoms: tuple[str, ...] = ("p", "q"),
                   allow_bot: bool = True) -> Formula:
    if depth <= 0 or rng.random() < 0.25:
        if allow_bot and rng.random() < 0.1:
            return BOT
        return Atom(rng.choice(atoms))
    if rng.random() < 0.5:
        return Implies(random_formula(rng, depth - 1, atoms, allow_bot),
                       random_formula(rng, depth - 1, atoms, allow_bot))
    return Box(random_formula(rng, depth - 1, atoms, allow_bot))


def random_formulas(count: int, depth: int, seed: int = 0, **kw) -> list[Formula]:
    rng = random.Random(seed)
    return [random_formula(rng, depth, **kw) for _ in range(count)]


# ---------------------------------------------------------------------------
# Hilbert axioms

TAUTOLOGIES = (
    "A -> (B -> A)",
    "(A -> (B -> C)) -> ((A -> B) -> (A -> C))",
    "~~A -> A",
    "((A -> B) -> A) -> A",
    "bot -> A",
)

SCHEMAS = {
    "K": "[](A -> B) -> ([]A -> []B)",
    "4": "[]A -> [][]A",
    "T": "[]A -> A",
    "Grz": "[]([](A -> []A) -> A) -> []A",
}

POOL = tuple(parse_formula(t) for t in (
    "p", "q", "bot", "[]p", "[]q", "p -> q", "[](p -> q)", "[][]p", "[]p -> q"))


def _substitute(f: Formula, env: dict[str, Formula]) -> Formula:
    if f.is_atom:
        return env.get(f.name, f)
    if f.is_implication:
        return Implies(_substitute(f.left, env), _substitute(f.right, env))
    if f.is_box:
        return Box(_substitute(f.body, env))
    return f


def _instances(schema: str, pool, max_modal: int | None):
    template = parse_formula(schema)
    names = sorted(f.name for f in subformulas([template]) if f.is_atom and f.name in ("A", "B", "C"))
    out = []
    for combo in itertools.product(pool, repeat=len(names)):
        env = dict(zip(names, combo))
        if max_modal is not None and any(modal_depth(x) > max_modal for x in combo):
            continue
        out.append(_substitute(template, env))
    return out


def hilbert_instances(pool=POOL, max_modal: int = 2) -> list[tuple[str, Formula]]:
    """Instances of the tautologies and the K, 4, T and Grz schemas; metavariables range over ``pool``.

    Three-variable tautologies use only the atoms and bot, to keep the count
    down.
    """
    seen = set()
    out = []
    small = tuple(f for f in pool if modal_depth(f) == 0 and f.size == 1)
    for i, t in enumerate(TAUTOLOGIES):
        for f in _instances(t, small if "C" in t else pool, max_modal):
            if f not in seen:
                seen.add(f)
                out.append((f"taut.{i}", f))
    for label, t in SCHEMAS.items():
        for f in _instances(t, pool, max_modal):
            if f not in seen:
                seen.add(f)
                out.append((label, f))
    return out


# ---------------------------------------------------------------------------
# proofs with cuts

def gratuitous_cut(pf: FiniteProof, c: Formula) -> FiniteProof:
    """Cut on ``c`` whose premises are weakenings of ``pf``."""
    s = pf.sequent
    return FiniteProof(s, RuleInstance(CUT, c),
                       (weak_seq(pf, EMPTY, Multiset([c])), weak_seq(pf, Multiset([c]), EMPTY)))


def self_cut(pf: FiniteProof) -> FiniteProof:
    """Cut of ``=> X`` against the axiom ``X => X``."""
    (x,) = list(pf.sequent.suc)
    s = pf.sequent
    ax_node = FiniteProof(Sequent(s.ant.add(x), s.suc), RuleInstance("Ax", x))
    return FiniteProof(s, RuleInstance(CUT, x), (weak_seq(pf, EMPTY, Multiset([x])), ax_node))


def modus_ponens_cut(a: Formula, b: Formula, limit_nodes: int = 50_000) -> FiniteProof | None:
    """Proof of ``=> b`` by a cut on ``a``, when both ``=> a`` and ``a => b`` are found."""
    first = prove_seq(Sequent([], [a]), limit_nodes)
    second = prove_seq(Sequent([a], [b]), limit_nodes)
    if not (first.proved and second.proved):
        return None
    return FiniteProof(Sequent([], [b]), RuleInstance(CUT, a),
                       (weak_seq(first.proof, EMPTY, Multiset([b])), second.proof))


def seq_cut_proofs(count: int = 24, seed: int = 0) -> list[FiniteProof]:
    """Finite proofs with cuts built around proofs found by search."""
    rng = random.Random(seed)
    goals = [f for _, f in hilbert_instances() if modal_depth(f) <= 3]
    rng.shuffle(goals)
    cut_formulas = [P, Q, BOT, Box(P), Implies(P, Q), Box(Implies(P, Box(P))), grz_formula(P)]
    out: list[FiniteProof] = []
    fixed = [
        modus_ponens_cut(Box(P), Implies(Box(Q), P)),
        modus_ponens_cut(Implies(P, P), Implies(Q, Q)),
        modus_ponens_cut(Box(Implies(P, P)), Box(Implies(Q, Implies(P, P)))),
    ]
    out.extend(pf for pf in fixed if pf is not None)
    for g in goals:
        if len(out) >= count:
            break
        res = prove_seq(Sequent([], [g]), 20_000)
        if not res.proved:
            continue
        if rng.random() < 0.3:
            out.append(self_cut(res.proof))
        else:
            out.append(gratuitous_cut(res.proof, rng.choice(cut_formulas)))
    return out


def atom_cut(a: Formula = P) -> InfProof:
    s = Sequent([a], [a])
    left = InfProof.leaf(Sequent([a], [a, a]))
    right = InfProof.leaf(Sequent([a, a], [a]))
    return InfProof(s, RuleInstance(CUT, a), [left, right], "corpus:atom-cut")


def expanded_cut(gamma: Multiset, a: Formula, delta: Multiset) -> InfProof:
    """Cut on ``a`` between two generalized axioms; proves ``gamma, a => a, delta``."""
    gamma, delta = Multiset(gamma), Multiset(delta)
    s = Sequent(gamma.add(a), delta.add(a))
    left = ax_expand(gamma, a, delta.add(a))
    right = ax_expand(gamma.add(a), a, delta)
    return InfProof(s, RuleInstance(CUT, a), [left, right], "corpus:expanded-cut")


def schema_cut(a: Formula) -> InfProof:
    """Cut on ``[]([](a -> []a) -> a)`` against the cyclic proof for ``a``."""
    f = grz_formula(a)
    s = Sequent([f], [a])
    left = ax_expand(EMPTY, f, Multiset([a]))
    right = weaken(unfold(grz_schema(a)), Multiset([f]))
    return InfProof(s, RuleInstance(CUT, f), [left, right], "corpus:schema-cut")


def inf_cut_proofs(count: int = 56, seed: int = 0) -> list[InfProof]:
    """Hand-built proofs with cuts plus translations of finite proofs with cuts."""
    out: list[InfProof] = [atom_cut(P), atom_cut(Q)]
    for a in (P, BOT, Box(P), Implies(P, Q), Box(Implies(P, Box(P))), neg(Box(P)), Box(Box(Q))):
        out.append(expanded_cut(EMPTY, a, EMPTY))
        out.append(expanded_cut(Multiset([Q]), a, Multiset([Box(Q)])))
    for a in (P, BOT, Box(P), Implies(P, Q)):
        out.append(schema_cut(a))
    for pf in seq_cut_proofs(count, seed):
        if len(out) >= count:
            break
        out.append(seq_to_inf(pf))
    return out

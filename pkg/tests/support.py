"""Shared corpora for the test suite (built once per session)."""

from __future__ import annotations

import functools
import random

from grz.corpus import (P, Q, expanded_cut, golden_proof, hilbert_instances, inf_cut_proofs,
                        random_formula, random_formulas, seq_cut_proofs)
from grz.cutelim import eliminate
from grz.formula import BOT, EMPTY, Box, Implies, Multiset, Sequent, parse_formula, parse_sequent
from grz.proofs import BOX_INF, CUT, REFL, InfProof, RuleInstance, is_right_premise, unfold
from grz.reduction import ReductionRequest
from grz.search import prove_inf, prove_seq
from grz.transforms import TransformSpec, li_box, weaken
from grz.translate import ax_expand, grz_schema, seq_to_inf, weak_seq


@functools.lru_cache(maxsize=None)
def golden() -> InfProof:
    return unfold(golden_proof())


@functools.lru_cache(maxsize=None)
def inf_corpus() -> tuple[InfProof, ...]:
    return tuple(inf_cut_proofs(56))


@functools.lru_cache(maxsize=None)
def seq_corpus():
    return tuple(seq_cut_proofs(24))


@functools.lru_cache(maxsize=None)
def schema_formulas():
    return tuple(random_formulas(20, 3, seed=7))


@functools.lru_cache(maxsize=None)
def cutfree_corpus() -> tuple[InfProof, ...]:
    """Cut-free proofs from several independent sources."""
    out = [golden()]
    out += [unfold(grz_schema(a)) for a in schema_formulas()[:8]]
    out += [ax_expand(Multiset([Q]), a, EMPTY) for a in random_formulas(6, 3, seed=3)]
    for s in ("[]p => [][]p", "[]([](p -> []p) -> p) => p", "p, p -> q => q", "[](p -> q), []p => []q"):
        res = prove_inf(_seq(s))
        if res.proved:
            out.append(unfold(res.proof))
    out += [eliminate(p) for p in inf_corpus()]
    return tuple(out)


def _seq(text):
    return parse_sequent(text)


def proved_seq(text: str):
    res = prove_seq(_seq(text))
    assert res.proved, text
    return res.proof


def cutfree_inf(text: str) -> InfProof:
    """Cut-free non-well-founded proof of a sequent via search, translation and elimination."""
    return eliminate(seq_to_inf(proved_seq(text)))


# ---------------------------------------------------------------------------
# reduction requests

def boxpi_request(b, extra: Multiset = EMPTY) -> ReductionRequest:
    """Left ends in BoxInf on []b; right ends in BoxInf on [][]b keeping []b in its boxed context."""
    bb = Box(b)
    bbb = Box(bb)
    extra = Multiset(extra)
    left_right = InfProof(Sequent([bb], [b]), RuleInstance(REFL, bb), [ax_expand(Multiset([bb]), b, EMPTY)])
    left_left = li_box(weaken(ax_expand(EMPTY, bb, EMPTY), extra, Multiset([bbb])), bb)
    left = InfProof(Sequent(extra.add(bb), [bbb, bb]), RuleInstance(BOX_INF, bb, Multiset([bb])),
                    [left_left, left_right])
    right = InfProof(Sequent(extra.add(bb, bb), [bbb]), RuleInstance(BOX_INF, bbb, Multiset([bb])),
                     [weaken(ax_expand(Multiset([bb]), bb, EMPTY), extra), ax_expand(EMPTY, bb, EMPTY)])
    return ReductionRequest(bb, left, right)


def _weakened_pair(pf, a) -> ReductionRequest:
    left = eliminate(seq_to_inf(weak_seq(pf, EMPTY, Multiset([a]))))
    right = eliminate(seq_to_inf(weak_seq(pf, Multiset([a]), EMPTY)))
    return ReductionRequest(a, left, right)


@functools.lru_cache(maxsize=None)
def reduction_requests() -> tuple[tuple[str, ReductionRequest], ...]:
    rng = random.Random(11)
    out: list[tuple[str, ReductionRequest]] = []
    cut_formulas = [P, Q, BOT, Box(P), Implies(P, Q), Box(Implies(P, Box(P))), Implies(Box(P), P),
                    Box(Box(Q)), Implies(P, BOT), parse_formula("[]([](p -> []p) -> p)")]
    for a in cut_formulas + list(random_formulas(20, 3, seed=5)):
        for gamma, delta in ((EMPTY, EMPTY), (Multiset([Q]), Multiset([Box(Q)]))):
            p = expanded_cut(gamma, a, delta)
            out.append(("generalized-axioms", ReductionRequest(a, p.child(0), p.child(1))))
    goals = [f for _, f in hilbert_instances()]
    rng.shuffle(goals)
    for g in goals[:30]:
        pf = prove_seq(Sequent([], [g])).proof
        out.append(("weakened", _weakened_pair(pf, rng.choice(cut_formulas))))
    for a_text, b_text in (("[]p -> p", "q -> ([]p -> p)"), ("p -> p", "q -> q"), ("[](p -> p)", "[](q -> (p -> p))"),
                           ("[]([](p -> []p) -> p) -> []p", "[]([](p -> []p) -> p) -> p"),
                           ("[]p -> [][]p", "[]p -> [][][]p"), ("bot -> p", "q -> (bot -> p)")):
        a, b = parse_formula(a_text), parse_formula(b_text)
        left = eliminate(seq_to_inf(weak_seq(proved_seq(f"=> {a_text}"), EMPTY, Multiset([b]))))
        right = eliminate(seq_to_inf(proved_seq(f"{a_text} => {b_text}")))
        out.append(("modus-ponens", ReductionRequest(a, left, right)))
    for b in [P, Q, BOT, Implies(P, Q), Box(P)] + list(random_formulas(8, 2, seed=9)):
        out.append(("boxpi", boxpi_request(b)))
        out.append(("boxpi", boxpi_request(b, Multiset([Q]))))
    return tuple(out)


# ---------------------------------------------------------------------------
# transformer inputs

def expected_conclusion(s: Sequent, spec: TransformSpec) -> Sequent:
    f = spec.formula
    ant, suc = list(s.ant), list(s.suc)
    if spec.kind == "wk":
        return Sequent(ant + list(spec.pi), suc + list(spec.sigma))
    if spec.kind in ("li_imp", "ri_imp"):
        ant.remove(f)
        return Sequent(ant + [f.right], suc) if spec.kind == "li_imp" else Sequent(ant, suc + [f.left])
    if spec.kind == "inv_imp":
        suc.remove(f)
        return Sequent(ant + [f.left], suc + [f.right])
    if spec.kind == "inv_bot":
        suc.remove(BOT)
        return Sequent(ant, suc)
    if spec.kind == "li_box":
        suc.remove(f)
        return Sequent(ant, suc + [f.body])
    if spec.kind == "acl":
        ant.remove(f)
        return Sequent(ant, suc)
    suc.remove(f)
    return Sequent(ant, suc)


SMALL = (P, Q, BOT, Box(P), Implies(P, Q), Box(Q))


def applicable_specs(p: InfProof, rng: random.Random) -> list[tuple[InfProof, TransformSpec]]:
    """Transformer applications that fit the root sequent of ``p``."""
    s = p.sequent
    out = []
    pi = Multiset(rng.sample(SMALL, rng.randint(0, 2)))
    sigma = Multiset(rng.sample(SMALL, rng.randint(0, 2)))
    out.append((p, TransformSpec("wk", pi=pi, sigma=sigma)))
    for f in s.ant.distinct():
        if f.is_implication:
            out.append((p, TransformSpec("li_imp", f)))
            out.append((p, TransformSpec("ri_imp", f)))
        if f.is_atom:
            out.append((weaken(p, Multiset([f])), TransformSpec("acl", f)))
    for f in s.suc.distinct():
        if f.is_implication:
            out.append((p, TransformSpec("inv_imp", f)))
        if f.is_box:
            out.append((p, TransformSpec("li_box", f)))
        if f.is_atom:
            out.append((weaken(p, EMPTY, Multiset([f])), TransformSpec("acr", f)))
    out.append((weaken(p, EMPTY, Multiset([BOT])), TransformSpec("inv_bot")))
    return out


@functools.lru_cache(maxsize=None)
def transform_inputs() -> tuple[tuple[InfProof, TransformSpec], ...]:
    rng = random.Random(3)
    pool = list(cutfree_corpus()) + list(inf_corpus())
    pool += [unfold(grz_schema(a)) for a in schema_formulas()]
    for text in ("=> []p -> p", "[](p -> q), []p => []q", "[]p => [][]p", "p -> q, q -> p => p -> p",
                 "=> [](p -> q) -> ([]p -> []q)", "[]p, []q => [](p -> (q -> p))"):
        pool.append(cutfree_inf(text))
    pool += [eliminate(seq_to_inf(pf)) for pf in random_provable(320)]
    out = []
    for p in pool:
        out.extend(applicable_specs(p, rng))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def random_provable(count: int, seed: int = 21):
    """Finite cut-free proofs of random sequents that search can settle."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        ant = [random_formula(rng, 2) for _ in range(rng.randint(1, 3))]
        suc = [random_formula(rng, 2) for _ in range(rng.randint(1, 2))]
        res = prove_seq(Sequent(ant, suc), 5_000)
        if res.proved:
            out.append(res.proof)
    return tuple(out)



def detour(r: InfProof) -> InfProof:
    """Same sequent as ``r`` but a different root rule: a cut on bot."""
    s = r.sequent
    return InfProof(s, RuleInstance(CUT, BOT),
                    [weaken(r, EMPTY, Multiset([BOT])), InfProof.leaf(Sequent(s.ant.add(BOT), s.suc))],
                    "test:detour")


def perturb(p: InfProof, n: int) -> InfProof:
    """Agrees with ``p`` up to level ``n``; every subproof at level 0 is replaced by a detour."""
    if n <= 0:
        return detour(p)
    kids = [(lambda i=i: perturb(p.child(i), n - 1 if is_right_premise(p, i) else n)) for i in range(p.arity)]
    return InfProof(p.sequent, p.rule, kids, "test:perturb")

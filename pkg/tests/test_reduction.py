import pytest

from grz.errors import ContextMismatch, NotInP1
from grz.formula import BOT, EMPTY, Atom, Box, Multiset, Sequent, parse_formula, parse_sequent
from grz.proofs import AX, BOX_INF, CUT, InfProof, check_inf, in_P_n, local_height, sim_n
from grz.reduction import ReductionRequest, reduce, reduce_atom, reduce_box
from grz.search import prove_seq
from grz.translate import ax_expand

import support as S

p, q = Atom("p"), Atom("q")


def test_bot_cut_drops_the_bot():
    left = InfProof.leaf(parse_sequent("q => q, bot"))
    right = InfProof.leaf(parse_sequent("bot, q => q"))
    out = reduce(ReductionRequest(BOT, left, right))
    assert out.sequent == parse_sequent("q => q") and out.rule.tag == AX


def test_atom_cut_between_axioms():
    out = reduce(ReductionRequest(p, InfProof.leaf(parse_sequent("p => p, p")),
                                  InfProof.leaf(parse_sequent("p, p => p"))))
    assert out.sequent == parse_sequent("p => p") and out.is_leaf


def test_atom_cut_contracts_right_proof():
    right = S.cutfree_inf("p, p, p -> q => q")
    req = ReductionRequest(p, InfProof.leaf(parse_sequent("p, p -> q => q, p")), right)
    out = reduce_atom(req)
    assert out.sequent == parse_sequent("p, p -> q => q")
    assert local_height(out) <= local_height(right)
    assert check_inf(out, 4).ok


def test_context_mismatch():
    left = InfProof.leaf(parse_sequent("p => p, q"))
    right = InfProof.leaf(parse_sequent("q, p, p => p"))
    with pytest.raises(ContextMismatch):
        reduce(ReductionRequest(q, left, right))
    with pytest.raises(ContextMismatch):
        reduce(ReductionRequest(Box(q), left, right))


def test_inputs_must_be_cut_free_at_the_root():
    cut = S.inf_corpus()[0]
    a = cut.rule.principal
    s = cut.sequent
    left = InfProof(Sequent(s.ant, s.suc.add(a)), cut.rule,
                    [InfProof.leaf(Sequent(s.ant, s.suc.add(a, a))), InfProof.leaf(Sequent(s.ant.add(a), s.suc.add(a)))])
    right = InfProof.leaf(Sequent(s.ant.add(a), s.suc))
    with pytest.raises(NotInP1):
        reduce(ReductionRequest(a, left, right))
    with pytest.raises(NotInP1):
        reduce(ReductionRequest(a, right, left))


def test_kind_guards():
    left = InfProof.leaf(parse_sequent("p => p, p"))
    right = InfProof.leaf(parse_sequent("p, p => p"))
    with pytest.raises(ValueError):
        reduce_box(ReductionRequest(p, left, right))
    with pytest.raises(ValueError):
        reduce_atom(ReductionRequest(Box(p), left, right))


def test_cut_formula_in_boxed_context_moves_above_a_right_premise():
    req = S.boxpi_request(p)
    out = reduce_box(req)
    assert out.rule.tag == BOX_INF
    assert in_P_n(out, 1) and not in_P_n(out, 2)
    assert out.child(1).rule.tag == CUT
    assert check_inf(out, 4, "grz-inf-cut").ok


def test_generalized_axiom_cut_on_grz_formula():
    a = parse_formula("[]([](p -> []p) -> p)")
    left = ax_expand(EMPTY, a, Multiset([a]))
    right = ax_expand(Multiset([a]), a, EMPTY)
    out = reduce(ReductionRequest(a, left, right))
    assert out.sequent == Sequent([a], [a])
    assert in_P_n(out, 1) and check_inf(out, 5, "grz-inf-cut").ok


@pytest.mark.parametrize("kind", ["generalized-axioms", "weakened", "modus-ponens", "boxpi"])
def test_contract_on_sample(kind):
    reqs = [r for k, r in S.reduction_requests() if k == kind][:12]
    assert reqs
    for req in reqs:
        out = reduce(req)
        l, r = req.left.sequent, req.right.sequent
        assert out.sequent == Sequent(r.ant.remove(req.cut_formula), l.suc.remove(req.cut_formula))
        assert in_P_n(out, 1)
        assert check_inf(out, 3, "grz-inf-cut").ok
        if kind == "boxpi":
            assert not in_P_n(out, 2)
        for n in (1, 3):
            other = reduce(ReductionRequest(req.cut_formula, S.perturb(req.left, n), S.perturb(req.right, n)),
                           check=False)
            assert sim_n(out, other, n)


def test_conclusions_are_provable_per_search():
    for kind, req in S.reduction_requests()[::5]:
        out = reduce(req)
        assert prove_seq(out.sequent, 20_000).proved, (kind, out.sequent)

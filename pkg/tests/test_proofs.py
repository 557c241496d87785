from dataclasses import replace
from fractions import Fraction

import pytest

from grz.corpus import golden_proof
from grz.errors import BudgetExceeded, InapplicableRule, InvalidProof
from grz.formula import BOT, Atom, Box, Multiset, Sequent, parse_formula, parse_sequent
from grz.proofs import (AX, AX_BOT, BOX_INF, CUT, IMP_L, IMP_R, REFL, CyclicNode, CyclicProof, Edge,
                        FiniteProof, Hole, InfProof, RuleInstance, check_cyclic, check_finite, check_inf,
                        distance, expand, in_P_n, local_height, main_fragment, premises_of, sim_n, unfold)
from grz.translate import grz_schema

import support as S

F = parse_formula("[]([](p -> []p) -> p)")
p = Atom("p")


def seq(text):
    return parse_sequent(text)


class TestPremises:
    def test_refl(self):
        s = seq("q, []p => r")
        assert premises_of(RuleInstance(REFL, Box(p)), s) == [seq("q, p, []p => r")]

    def test_box_inf(self):
        s = Sequent([F], [parse_formula("[](p -> []p)"), p])
        got = premises_of(RuleInstance(BOX_INF, parse_formula("[](p -> []p)"), Multiset([F])), s)
        assert got == [Sequent([F], [parse_formula("p -> []p"), p]), Sequent([F], [parse_formula("p -> []p")])]

    def test_axioms_and_cut(self):
        assert premises_of(RuleInstance(AX, p), seq("p => p")) == []
        assert premises_of(RuleInstance(CUT, p), seq("q => r")) == [seq("q => r, p"), seq("p, q => r")]

    def test_inapplicable(self):
        with pytest.raises(InapplicableRule):
            premises_of(RuleInstance(IMP_L, parse_formula("p -> q")), seq("p => q"))
        with pytest.raises(InapplicableRule):
            premises_of(RuleInstance(BOX_INF, Box(p), Multiset([Box(p)])), seq("q => []p"))


class TestCheckFinite:
    def test_bot_axiom(self):
        assert check_finite(FiniteProof(seq("q, bot => p"), RuleInstance(AX_BOT, BOT)), "grz-seq").ok

    def test_cut_rejected_without_cut(self):
        leaf1 = FiniteProof(seq("p => p, p"), RuleInstance(AX, p))
        leaf2 = FiniteProof(seq("p, p => p"), RuleInstance(AX, p))
        pf = FiniteProof(seq("p => p"), RuleInstance(CUT, p), (leaf1, leaf2))
        report = check_finite(pf, "grz-seq")
        assert not report.ok and "cut not allowed" in str(report)
        assert check_finite(pf, "grz-seq-cut").ok

    def test_violation_path(self):
        bad = FiniteProof(seq("=> p -> p"), RuleInstance(IMP_R, parse_formula("p -> p")),
                          (FiniteProof(seq("p => q"), RuleInstance(AX, p)),))
        report = check_finite(bad, "grz-seq")
        assert [v.where for v in report.violations] == ["root", "root.0"]


class TestCheckCyclic:
    def test_golden_accepted(self):
        assert check_cyclic(golden_proof(), "grz-inf").ok

    def test_back_edge_avoiding_box_right_premise(self):
        nodes = list(golden_proof().nodes)
        # node 4 sits on the left premise of the BoxInf at node 3
        nodes[4] = CyclicNode(nodes[4].sequent, nodes[4].rule, (Edge(3, back=True),))
        report = check_cyclic(CyclicProof(tuple(nodes)))
        assert not report.ok
        assert any("cycle without box-right edge" in v.message for v in report.violations)

    def test_non_atomic_axiom(self):
        f = parse_formula("p -> q")
        cp = CyclicProof((CyclicNode(Sequent([f], [f]), RuleInstance(AX, f), ()),))
        report = check_cyclic(cp, "grz-inf")
        assert "non-atomic axiom" in str(report)

    def test_back_edge_must_target_ancestor(self):
        nodes = list(golden_proof().nodes)
        nodes[7] = replace(nodes[7], children=(Edge(8), Edge(2, back=True)))
        report = check_cyclic(CyclicProof(tuple(nodes)))
        assert "not a strict ancestor" in str(report.violations)

    def test_unfold_rejects_invalid(self):
        nodes = list(golden_proof().nodes)
        nodes[0] = replace(nodes[0], rule=RuleInstance(REFL, Box(p)))
        with pytest.raises(InvalidProof):
            unfold(CyclicProof(tuple(nodes)))


class TestObservation:
    def test_golden_main_fragment(self):
        g = S.golden()
        mf = main_fragment(g)
        assert local_height(g) == 4
        assert mf.size() == 6 and mf.holes() == 1
        hole = mf.children[0].children[1].children[1]
        assert isinstance(hole, Hole) and hole.sequent == Sequent([F], [parse_formula("p -> []p")])

    def test_bare_axiom_height_zero(self):
        leaf = InfProof.leaf(seq("p => p"))
        assert local_height(leaf) == 0
        assert main_fragment(leaf) == FiniteProof(seq("p => p"), RuleInstance(AX, p))

    def test_refl_over_axiom_height_one(self):
        pf = InfProof(seq("[]p => p"), RuleInstance(REFL, Box(p)), [InfProof.leaf(seq("p, []p => p"))])
        assert local_height(pf) == 1

    def test_expand_levels(self):
        g = S.golden()
        assert isinstance(expand(g, 0), Hole)
        sizes = [expand(g, n).size() for n in (1, 2, 3)]
        assert sizes == [6, 9, 15]

    def test_non_productive_proof(self):
        s = seq("[]p => q")
        node = InfProof(s, RuleInstance(REFL, Box(p)), [])
        node._kids = [lambda: InfProof(seq("p, []p => q"), RuleInstance(REFL, Box(p)), [lambda: node])]
        with pytest.raises(BudgetExceeded):
            expand(node, 2, budget=50)

    def test_sim_and_distance(self):
        g = S.golden()
        other = unfold(grz_schema(p))
        assert all(sim_n(g, other, n) for n in range(9))
        assert distance(g, g, 6) == distance(g, other, 6)
        assert not distance(g, g, 6).exact
        leaf = InfProof.leaf(seq("p => p"))
        assert distance(leaf, InfProof.leaf(seq("p, q => p")), 3).upper == 1

    def test_distance_half_when_right_premises_differ(self):
        g = S.golden()
        q = S.perturb(g, 1)
        d = distance(g, q, 6)
        assert d.exact and d.upper == Fraction(1, 2)

    def test_in_P_n(self):
        g = S.golden()
        assert in_P_n(g, 0) and all(in_P_n(g, n) for n in range(1, 6))
        cut = S.inf_corpus()[0]
        assert cut.rule.tag == CUT and in_P_n(cut, 0) and not in_P_n(cut, 1)

    def test_check_inf(self):
        assert check_inf(S.golden(), 5).ok
        assert not check_inf(S.inf_corpus()[0], 2, "grz-inf").ok

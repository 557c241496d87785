import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grz.errors import MultisetError, ParseError
from grz.formula import (BOT, Atom, Box, Implies, Multiset, Sequent, conj, diamond, disj, lambda_star,
                         modal_depth, neg, parse_formula, parse_sequent, print_formula, subformulas, top)

p, q = Atom("p"), Atom("q")

formulas = st.recursive(
    st.sampled_from([BOT, p, q, Atom("r1")]),
    lambda sub: st.one_of(st.builds(Implies, sub, sub), st.builds(Box, sub)),
    max_leaves=12,
)


def brute_subformulas(f):
    """Independent recursive enumeration."""
    if f is BOT or f.is_atom:
        return {f}
    if f.is_box:
        return {f} | brute_subformulas(f.body)
    return {f} | brute_subformulas(f.left) | brute_subformulas(f.right)


def test_parse_examples():
    f = parse_formula("[]([](p -> []p) -> p)")
    assert f is Box(Implies(Box(Implies(p, Box(p))), p))
    assert parse_formula("p") is p
    assert parse_formula("~p") is Implies(p, BOT)


def test_print_examples():
    assert print_formula(BOT) == "bot"
    assert print_formula(Implies(p, q)) == "(p -> q)"
    assert print_formula(Box(p)) == "[]p"


def test_implication_is_right_associative_and_unary_binds_tightest():
    assert parse_formula("p -> q -> p") is Implies(p, Implies(q, p))
    assert parse_formula("[]p -> q") is Implies(Box(p), q)
    assert parse_formula("~[]p") is neg(Box(p))


def test_sugar_expands():
    assert parse_formula("top") is top() is neg(BOT)
    assert parse_formula("<>p") is diamond(p) is neg(Box(neg(p)))
    assert parse_formula("p \\/ q") is disj(p, q) is Implies(neg(p), q)
    assert parse_formula("p /\\ q") is conj(p, q)


def test_unicode_aliases():
    assert parse_formula("□(p → ◇q)") is parse_formula("[](p -> <>q)")
    assert parse_sequent("□p ⇒ p") == parse_sequent("[]p => p")


@pytest.mark.parametrize("text", ["", "p ->", "(p", "[]", "p q", "p => q", "->p"])
def test_malformed_formulas(text):
    with pytest.raises(ParseError) as info:
        parse_formula(text)
    assert info.value.position >= 0


@given(formulas)
def test_round_trip(f):
    assert parse_formula(print_formula(f)) is f


@given(formulas, formulas)
def test_conjunction_desugaring(a, b):
    sa, sb = print_formula(a), print_formula(b)
    assert parse_formula(f"({sa}) /\\ ({sb})") is parse_formula(f"~(({sa}) -> ~({sb}))")


@given(formulas)
def test_subformulas_match_brute_force(f):
    sub = subformulas([f])
    assert sub == brute_subformulas(f)
    for g in sub:
        assert set(g.children()) <= sub


def test_subformula_examples():
    assert subformulas(parse_sequent("=> p")) == {p}
    assert subformulas(parse_sequent("[]p =>")) == {Box(p), p}
    got = subformulas(parse_sequent("[]([](p -> []p) -> p) => p"))
    want = {parse_formula(t) for t in
            ("[]([](p -> []p) -> p)", "[](p -> []p) -> p", "[](p -> []p)", "p -> []p", "[]p", "p")}
    assert got == want


def test_lambda_star():
    assert lambda_star(set()) == Multiset()
    assert lambda_star({p}) == Multiset([parse_formula("[](p -> []p)")])
    assert lambda_star({p, Box(p)}) == Multiset([parse_formula("[](p -> []p)"),
                                                 parse_formula("[]([]p -> [][]p)")])


def test_modal_depth():
    assert modal_depth(p) == 0
    assert modal_depth(parse_formula("[](p -> []p)")) == 2


class TestMultiset:
    def test_equality_is_by_multiplicity(self):
        assert Multiset([p, q, p]) == Multiset([q, p, p])
        assert Multiset([p]) != Multiset([p, p])

    def test_remove_absent_is_an_error(self):
        with pytest.raises(MultisetError):
            Multiset([p]).remove(q)
        with pytest.raises(MultisetError):
            Multiset([p]).minus(Multiset([p, p]))

    def test_truncated_difference_and_union_max(self):
        a = Multiset([p, p, q])
        b = Multiset([p, Box(p)])
        assert a - b == Multiset([p, q])
        assert a.union_max(b) == Multiset([p, p, q, Box(p)])
        assert Multiset([p]) <= a and not a <= b

    def test_boxed(self):
        assert Multiset([p, Box(p), Box(q), Box(q)]).boxed() == Multiset([Box(p), Box(q), Box(q)])

    @given(st.lists(formulas, max_size=5), st.lists(formulas, max_size=5))
    @settings(max_examples=50)
    def test_sum_counts(self, xs, ys):
        m = Multiset(xs) + Multiset(ys)
        for f in set(xs) | set(ys):
            assert m.count(f) == xs.count(f) + ys.count(f)


def test_sequent_parsing_and_printing():
    s = parse_sequent("p, p -> q => q, []p")
    assert s.ant == Multiset([p, Implies(p, q)])
    assert parse_sequent(str(s)) == s
    assert parse_sequent("=>") == Sequent()


def test_initial_sequents():
    assert parse_sequent("p => p").is_initial()
    assert parse_sequent("bot => q").is_initial()
    assert not parse_sequent("[]p => []p").is_initial()
    assert not parse_sequent("p => q").is_initial()

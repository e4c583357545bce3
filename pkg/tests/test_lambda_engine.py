import random

import pytest
from hypothesis import given, strategies as st

from impmodels.errors import ReductionBudgetExceeded, TermSyntaxError, UnboundVariable, UnknownCombinator
from impmodels.finite_order import chain
from impmodels.imp_algebra import BUILTIN, from_heyting
from impmodels.lambda_engine import (
    Abs, App, Const, Var, alpha_equal, beta_step, combinator, encode, normalize, numeral,
    parse_term, print_term, reduces_to, reduction_path, substitute, term_size,
)
from oracles import naive_encode, random_closed_term

SMALL = ["b2", "h3", "bool4", "diamond", "pca-b2"]


def small_algebras():
    algs = [BUILTIN[n]() for n in SMALL]
    algs.append(from_heyting(chain(4), name="C4"))
    return algs


def test_parse_and_print_round_trip():
    for src in [r"\x y. x", r"\x. x x", r"(\x. x) y", r"f (g x) (\z. z)", r"\x. f (\y. y x)"]:
        t = parse_term(src)
        assert parse_term(print_term(t)) == t


def test_parse_errors():
    for bad in [r"\x x", "(x", "x )", r"\. x", "#"]:
        with pytest.raises(TermSyntaxError):
            parse_term(bad)
    with pytest.raises(UnknownCombinator):
        parse_term("#nosuch")
    with pytest.raises(TermSyntaxError):
        parse_term("'a")


def test_constants_resolve_through_algebra_and_params():
    alg = BUILTIN["h3"]()
    assert parse_term("'m", algebra=alg) == Const(1)
    assert parse_term("'rho", params={"rho": 2}) == Const(2)


def test_substitution_avoids_capture():
    t = parse_term(r"\y. x y")
    r = substitute(t, "x", Var("y"))
    assert isinstance(r, Abs) and r.var != "y"
    assert alpha_equal(r, parse_term(r"\z. y z"))
    assert substitute(t, "q", Var("y")) is t


def test_leftmost_outermost_reduction():
    t = parse_term(r"(\x y. x) a ((\z. z z) (\z. z z))")
    assert normalize(t) == Var("a")
    assert beta_step(Var("a")) is None
    with pytest.raises(ReductionBudgetExceeded):
        normalize(parse_term(r"(\z. z z) (\z. z z)"), budget=50)


def test_turing_fixpoint_unfolds_in_two_steps():
    f = Var("f")
    yf = App(combinator("y"), f)
    assert reduces_to(yf, App(f, yf)) == 2


@pytest.mark.parametrize("n", range(6))
def test_numerals_are_iterated_successors(n):
    t = combinator("0")
    for _ in range(n):
        t = App(combinator("succ"), t)
    assert alpha_equal(normalize(t), numeral(n))


@pytest.mark.parametrize("m, n", [(a, b) for a in range(4) for b in range(4)])
def test_eqnat_decides_equality(m, n):
    t = App(App(App(App(combinator("eqnat"), numeral(m)), numeral(n)), Var("a")), Var("b"))
    assert normalize(t) == Var("a" if m == n else "b")


def test_pairs_project():
    p = parse_term("#p a b")
    assert normalize(App(combinator("p1"), p)) == Var("a")
    assert normalize(App(combinator("p2"), p)) == Var("b")


@pytest.mark.parametrize("alg", small_algebras(), ids=lambda a: a.name)
def test_k_and_s_encode_to_the_combinators(alg):
    assert encode(combinator("k"), alg=alg) == alg.K
    assert encode(combinator("s"), alg=alg) == alg.S


@pytest.mark.parametrize("alg", small_algebras(), ids=lambda a: a.name)
def test_encode_matches_substitution_oracle(alg):
    rng = random.Random(7)
    for _ in range(300):
        t = random_closed_term(rng, alg, max_size=10)
        assert encode(t, alg=alg) == naive_encode(t, alg)


def test_encode_rejects_free_variables():
    with pytest.raises(UnboundVariable):
        encode(Var("x"), alg=BUILTIN["b2"]())
    assert encode(Var("x"), {"x": 1}, BUILTIN["b2"]()) == 1


def test_random_terms_respect_size_bound():
    rng = random.Random(3)
    alg = BUILTIN["h3"]()
    for _ in range(500):
        t = random_closed_term(rng, alg)
        assert term_size(t) <= 12 and not t.fv


@st.composite
def algebra_and_term(draw):
    alg = draw(st.sampled_from(small_algebras()))
    seed = draw(st.integers(0, 2**32 - 1))
    return alg, random_closed_term(random.Random(seed), alg)


@given(algebra_and_term())
def test_beta_reduction_only_moves_up(case):
    alg, t = case
    prev = encode(t, alg=alg)
    try:
        for u in list(reduction_path(t, budget=40))[1:]:
            cur = encode(u, alg=alg)
            assert alg.leq(prev, cur)
            prev = cur
    except ReductionBudgetExceeded:
        pass

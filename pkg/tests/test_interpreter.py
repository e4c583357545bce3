import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from impmodels.errors import ScopeError
from impmodels.formula import depth, free_vars, parse_formula
from impmodels.imp_algebra import BUILTIN
from impmodels.interpreter import RELATIVE, Evaluator, evaluator, interpret, validates
from impmodels.set_universe import build_exhaustive
from oracles import HeytingSetOracle, all_envs, denotation, hf_truth, random_closed_formula

B2 = BUILTIN["b2"]()
H3 = BUILTIN["h3"]()


def hf_corpus(n, seed):
    rng = random.Random(seed)
    return [random_closed_formula(rng, max_depth=3) for _ in range(n)]


@pytest.mark.parametrize("d", [1, 2, 3])
def test_two_valued_interpretation_matches_hf_sets(d):
    U = build_exhaustive(B2, d)
    memo = {}
    dom = [denotation(a, B2.top, memo) for a in U]
    corpus = hf_corpus(250, seed=d)
    outcomes = []
    for f in corpus:
        assert depth(f) <= 3 and not free_vars(f)
        v = interpret(f, (), (), B2, U)
        assert v in (B2.bottom, B2.top)
        truth = hf_truth(f, {}, dom)
        assert (v == B2.top) == truth, str(f)
        outcomes.append(truth)
    # the corpus exercises both verdicts
    assert any(outcomes) and not all(outcomes)


def test_open_formulas_match_hf_sets_pointwise():
    U = build_exhaustive(B2, 3)
    memo = {}
    dom = [denotation(a, B2.top, memo) for a in U]
    for text in ["x in y", "x sub y", "exists z. z in x & z in y", "forall z. z in x -> z = y",
                 "~x = y | x in y"]:
        f = parse_formula(text)
        for a, b in product(U, repeat=2):
            env = {"x": denotation(a, B2.top, memo), "y": denotation(b, B2.top, memo)}
            v = interpret(f, ("x", "y"), (a, b), B2, U)
            assert (v == B2.top) == hf_truth(f, env, dom)


@pytest.mark.parametrize("alg_name", ["h3", "diamond", "bool4"])
def test_heyting_interpretation_matches_lattice_oracle(alg_name):
    alg = BUILTIN[alg_name]()
    U = build_exhaustive(alg, 2)
    o = HeytingSetOracle(alg, U)
    rng = random.Random(11)
    for _ in range(120):
        f = random_closed_formula(rng, max_depth=3)
        assert interpret(f, (), (), alg, U) == o.value(f, {})
    for text in ["x in y -> y in x", "x sub y & ~y = x", "exists z. x in z & z in y"]:
        f = parse_formula(text)
        for env in all_envs(("x", "y"), U):
            assert interpret(f, ("x", "y"), (env["x"], env["y"]), alg, U) == o.value(f, env)


def test_spot_values():
    U = build_exhaustive(B2, 2)
    empty = U.names[0]
    assert interpret("bot", (), (), B2, U) == B2.bottom
    assert interpret("x = x", ("x",), (empty,), B2, U) == B2.top
    assert interpret("exists y. y = x", ("x",), (empty,), B2, U) == B2.top
    assert validates("forall x. x = x", B2, U) == (True, B2.top)
    assert validates("bot", B2, U) == (False, B2.bottom)
    ext = "forall x. forall y. x sub y & y sub x -> x = y"
    assert validates(ext, B2, build_exhaustive(B2, 3))[0]


def test_validity_of_open_formula_is_a_meet():
    U = build_exhaustive(H3, 2)
    ev = evaluator(H3, U)
    f = parse_formula("x in y")
    fam = ev.family(f, ("x", "y"))
    assert len(fam) == len(U) ** 2
    assert ev.meet_value(f, ("x", "y")) == H3.meet_all(fam)
    assert ev.validates(f, ("x", "y")) == (False, H3.bottom)


def test_scope_errors():
    U = build_exhaustive(B2, 2)
    with pytest.raises(ScopeError):
        interpret("x in y", ("x",), (U.names[0],), B2, U)
    with pytest.raises(ScopeError):
        interpret("x = x", ("x",), (), B2, U)
    outsider = build_exhaustive(B2, 3).names[-1]
    with pytest.raises(ScopeError):
        interpret("x = x", ("x",), (outsider,), B2, U)


def test_validates_over_restricts_only_the_leading_block():
    U = build_exhaustive(B2, 3)
    ev = evaluator(B2, U)
    f = parse_formula("forall x. exists y. x in y")
    params = U.names[:3]
    assert ev.split_outer(f) == (("x",), parse_formula("exists y. x in y"))
    assert ev.validates_over(f, params)[0]
    # inside the universe, the largest names have no superset to live in
    assert not ev.validates(f)[0]


def test_evaluators_are_shared():
    U = build_exhaustive(B2, 2)
    assert evaluator(B2, U) is evaluator(B2, U)
    assert isinstance(evaluator(B2, U), Evaluator)
    assert RELATIVE == "relative to U"


@given(st.sampled_from(["x in y", "x = y", "x sub y", "~x in y", "x in y | y in x"]),
       st.integers(0, 255), st.integers(0, 255))
def test_argument_order_follows_context(text, i, j):
    U = build_exhaustive(H3, 3)
    a, b = U.names[i], U.names[j]
    f = parse_formula(text)
    assert interpret(f, ("x", "y"), (a, b), H3, U) == interpret(f, ("y", "x"), (b, a), H3, U)

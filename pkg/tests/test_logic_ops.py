import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from impmodels.finite_order import all_subsets, chain
from impmodels.imp_algebra import BUILTIN, from_heyting
from impmodels.logic_ops import (
    PredFamily, beck_chevalley_holds, entails, entails_pointwise, fam_entails, iexists, iforall,
    plus, plus_table, pullback, quantify_along, reindex, times, times_table,
)
from oracles import order_lattice


def heyting_small():
    return [BUILTIN[n]() for n in ("b2", "h3", "bool4", "diamond")] + [
        from_heyting(chain(4), name="C4")]


def test_times_and_plus_by_definition():
    for alg in [BUILTIN[n]() for n in ("b2", "h3", "pca-b2", "h5")]:
        o = order_lattice(alg)
        imp, r = alg.imp, range(alg.n)
        for a, b in product(r, repeat=2):
            assert times(alg, a, b) == o.meet_all(imp[imp[a][imp[b][x]]][x] for x in r)
            assert plus(alg, a, b) == o.meet_all(imp[imp[a][x]][imp[imp[b][x]][x]] for x in r)


@pytest.mark.parametrize("alg", heyting_small(), ids=lambda a: a.name)
def test_heyting_coincidences(alg):
    t, p = times_table(alg), plus_table(alg)
    for a, b in product(range(alg.n), repeat=2):
        assert t[a][b] == alg.meet(a, b)
        assert p[a][b] == alg.join(a, b)
    for s in all_subsets(alg.n):
        assert iexists(alg, s) == alg.join_all(s)


def test_pca_completion_is_not_heyting_on_the_nose():
    # with the adjoined top, T* x T* and 0 + T* both fall back to the old top
    alg = BUILTIN["pca-b2"]()
    top = alg.top
    assert times(alg, top, top) == 1 != alg.meet(top, top)
    assert plus(alg, 0, top) == 1 != alg.join(0, top)
    assert iexists(alg, (top,)) == 1


def test_entailment_is_separator_membership():
    alg = BUILTIN["h3"]()
    assert entails(alg, 0, 1) and entails(alg, 1, 1) and not entails(alg, 2, 1)
    assert entails_pointwise(alg, [0, 1], [1, 2])
    assert not entails_pointwise(alg, [0, 2], [1, 1])


INDEX_SETS = [tuple(range(k)) for k in range(4)]
MAPS = [(dom, cod, f) for dom in INDEX_SETS for cod in INDEX_SETS
        for f in product(cod, repeat=len(dom))]


def _adjunctions_hold(alg, phi, f, dom, cod, psi):
    fd = dict(zip(dom, f))
    ex = quantify_along(alg, phi, fd, cod, "exists")
    fa = quantify_along(alg, phi, fd, cod, "forall")
    re = reindex(psi, fd, dom)
    left = fam_entails(alg, ex, psi) == fam_entails(alg, phi, re)
    right = fam_entails(alg, re, phi) == fam_entails(alg, psi, fa)
    return left and right


def test_adjunctions_exhaustive_over_b2():
    alg = BUILTIN["b2"]()
    for dom, cod, f in MAPS:
        for vals in product(range(alg.n), repeat=len(dom)):
            phi = PredFamily(dom, vals)
            for wvals in product(range(alg.n), repeat=len(cod)):
                assert _adjunctions_hold(alg, phi, f, dom, cod, PredFamily(cod, wvals))


def test_pullback_squares_commute():
    f = {0: 0, 1: 1, 2: 1}
    g = {0: 1, 1: 0}
    P, p1, p2 = pullback(f, (0, 1, 2), g, (0, 1))
    assert all(f[p1(x)] == g[p2(x)] for x in P)
    assert len(P) == 3


@given(st.integers(0, 2**32 - 1), st.sampled_from(["exists", "forall"]))
def test_beck_chevalley_on_random_squares(seed, mode):
    rng = random.Random(seed)
    alg = rng.choice([BUILTIN["b2"](), BUILTIN["h3"](), BUILTIN["pca-b2"]()])
    dom, cod, f = rng.choice(MAPS)
    if not cod:
        return
    dom_g = tuple(range(rng.randint(0, 3)))
    g = {i: rng.choice(cod) for i in dom_g}
    phi = PredFamily(dom, tuple(rng.randrange(alg.n) for _ in dom))
    assert beck_chevalley_holds(alg, phi, dict(zip(dom, f)), g, dom_g, cod, mode)


def test_quantifier_mode_is_checked():
    alg = BUILTIN["b2"]()
    with pytest.raises(ValueError):
        quantify_along(alg, PredFamily((0,), (1,)), {0: 0}, (0,), "some")


def test_iforall_is_meet():
    alg = BUILTIN["h3"]()
    for s in all_subsets(alg.n):
        assert iforall(alg, s) == alg.meet_all(s)

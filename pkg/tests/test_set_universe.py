from itertools import product

import pytest
from hypothesis import given, strategies as st

from impmodels.errors import BudgetExceeded, NameSyntaxError, UniverseTooLarge
from impmodels.imp_algebra import BUILTIN
from impmodels.lambda_engine import encode, numeral
from impmodels.set_universe import (
    EMPTY, Universe, build_curated, build_exhaustive, collect_name, eq, exhaustive_size,
    make_name, mem, nat_name, omega_name, pair_name, parse_name, power_name, relations,
    render_name, sep_name, subset, union_name,
)
from oracles import HeytingSetOracle

B2 = BUILTIN["b2"]()
H3 = BUILTIN["h3"]()
U3 = build_exhaustive(B2, 3)


@pytest.mark.parametrize("alg, depth, size", [
    (B2, 0, 0), (B2, 1, 1), (B2, 2, 3), (B2, 3, 27), (H3, 2, 4), (H3, 3, 256),
    (BUILTIN["bool4"](), 2, 5),
])
def test_exhaustive_sizes(alg, depth, size):
    U = build_exhaustive(alg, depth)
    assert len(U) == size == exhaustive_size(alg.n, depth)
    assert len(set(U)) == size


def test_exhaustive_cap():
    with pytest.raises(UniverseTooLarge):
        build_exhaustive(B2, 4, cap=10_000)


def test_universe_is_domain_closed_and_ordered():
    for a in U3:
        assert all(u in U3 for u in a.domain)
    ranks = [a.rank for a in U3]
    assert ranks == sorted(ranks)
    with pytest.raises(ValueError):
        Universe((make_name({EMPTY: 1}),))


def test_names_are_interned():
    a = make_name([(EMPTY, 1)])
    assert make_name({EMPTY: 1}) is a
    assert a.rank == 1 and EMPTY.rank == 0
    with pytest.raises(ValueError):
        make_name([(EMPTY, 0), (EMPTY, 1)])


@pytest.mark.parametrize("alg", [B2, H3, BUILTIN["bool4"]()], ids=lambda a: a.name)
def test_literal_round_trip(alg):
    for a in build_exhaustive(alg, 3 if alg.n == 2 else 2):
        assert parse_name(render_name(a, alg), alg) is a


def test_literal_builders_and_errors():
    assert parse_name("nat(2)", B2) is nat_name(2, B2)
    assert parse_name("{{}: #1}", B2) is make_name({EMPTY: 1})
    for bad in ["{", "{{}: 7}", "{{}: #9}", "nat(x)", "foo(1)", "{} {}", "{{}}"]:
        with pytest.raises(NameSyntaxError):
            parse_name(bad, B2)


def test_relations_on_small_names():
    one = make_name({EMPTY: 1})      # {0}
    half = make_name({EMPTY: 0})     # empty as a set
    assert mem(EMPTY, one, B2) == 1
    assert mem(EMPTY, half, B2) == 0
    assert eq(EMPTY, half, B2) == 1
    assert subset(one, EMPTY, B2) == 0
    assert eq(EMPTY, EMPTY, B2) == 1


@pytest.mark.parametrize("alg, depth", [(B2, 3), (H3, 2), (BUILTIN["diamond"](), 2)],
                         ids=lambda x: getattr(x, "name", str(x)))
def test_relations_match_heyting_valued_oracle(alg, depth):
    U = build_exhaustive(alg, depth)
    o = HeytingSetOracle(alg, U)
    for a, b in product(U, repeat=2):
        assert mem(a, b, alg) == o.mem(a, b)
        assert subset(a, b, alg) == o.subset(a, b)
        assert eq(a, b, alg) == o.eq(a, b)


@given(st.sampled_from(U3.names), st.sampled_from(U3.names), st.sampled_from(U3.names))
def test_equality_is_an_equivalence_in_sigma(a, b, c):
    rel = relations(B2)
    assert rel.eq(a, a) == B2.top
    assert rel.eq(a, b) == rel.eq(b, a)
    # B2 is two-valued, so transitivity is literal
    if rel.eq(a, b) == rel.eq(b, c) == B2.top:
        assert rel.eq(a, c) == B2.top
    if rel.eq(a, b) == B2.top:
        assert rel.mem(a, c) == rel.mem(b, c)


def test_witness_constructors():
    a, b = U3.names[1], U3.names[5]
    p = pair_name(a, b, B2)
    assert mem(a, p, B2) == mem(b, p, B2) == B2.top
    u = union_name(make_name({a: 1, b: 1}), B2)
    assert set(u.domain) == set(a.domain) | set(b.domain)
    pw = power_name(b, B2)
    assert len(pw) == B2.n ** len(b.domain)
    s = sep_name(b, {x: 0 for x in b.domain}, B2)
    assert s.domain == b.domain and all(v == 0 for _, v in s.entries)
    assert collect_name([a, b], B2).domain == tuple(sorted({a, b}, key=lambda n: n.sort_key()))
    with pytest.raises(BudgetExceeded):
        power_name(b, B2, cap=1)


def test_numerals_as_names():
    three = nat_name(3, B2)
    assert len(three) == 3
    assert all(v == encode(numeral(m), {}, B2) for m, (_, v) in enumerate(three.entries))
    assert omega_name(3, B2) is three
    assert omega_name(4, B2) is nat_name(4, B2)


def test_curated_universe_records_provenance():
    seeds = [make_name({EMPTY: 1})]
    U = build_curated(seeds, B2, extend=("pair", "union"))
    assert U.provenance["kind"] == "curated"
    assert [c["constructor"] for c in U.provenance["closure"]] == ["pair", "union"]
    assert U.stats()["size"] == len(U)
    with pytest.raises(BudgetExceeded):
        build_curated(seeds, B2, budget=1)
    with pytest.raises(ValueError):
        build_curated(seeds, B2, extend=("nosuch",))


def test_extension_is_logged():
    U = build_exhaustive(B2, 2)
    V = U.extended([pair_name(EMPTY, U.names[1], B2)], "pair")
    assert len(V) == len(U) + 1
    assert V.provenance["extensions"] == [{"note": "pair", "added": 1}]

import json

import pytest

from impmodels.algebra_io import algebra_from_spec, algebra_to_spec, builtin, load_algebra, load_seeds
from impmodels.errors import AlgebraFormatError
from impmodels.imp_algebra import BUILTIN, validate
from impmodels.manifest import load_corpus, load_samples


@pytest.mark.parametrize("source, valid", [
    ("b2.alg", True), ("h3.alg", True), ("bool4.alg", True), ("pca-b2.alg", True),
    ("trivial-ca.alg", True), ("bad-separator.alg", False),
])
def test_shipped_files(source, valid):
    assert validate(load_algebra(source)).valid is valid


def test_bad_separator_witnesses():
    rep = validate(load_algebra("bad-separator.alg"))
    assert rep.clauses() == ["separator-contains-K", "separator-contains-S"]


@pytest.mark.parametrize("name", sorted(BUILTIN))
def test_inline_round_trip(name):
    alg = builtin(name)
    again = algebra_from_spec(json.loads(json.dumps(algebra_to_spec(alg))))
    assert again.imp == alg.imp and again.separator == alg.separator
    assert again.labels == alg.labels and again.lattice.poset.leq == alg.lattice.poset.leq


def test_order_is_closed_from_generators():
    alg = algebra_from_spec({"constructor": "heyting", "elements": ["a", "b", "c"],
                             "leq": [["a", "b"], ["b", "c"]]})
    assert alg.leq(0, 2) and validate(alg).valid


def test_nested_imp_object():
    spec = {"elements": ["0", "1"], "leq": [["0", "1"]],
            "imp": {"0": {"0": "1", "1": "1"}, "1": {"0": "0", "1": "1"}}}
    assert algebra_from_spec(spec).imp == builtin("b2").imp


@pytest.mark.parametrize("spec", [
    [], {"constructor": "nosuch"}, {"constructor": "inline", "elements": ["a", "a"], "imp": []},
    {"constructor": "heyting", "elements": []},
    {"constructor": "heyting", "elements": ["a"], "leq": [["a", "z"]]},
    {"constructor": "heyting", "elements": ["a"], "leq": ["a"]},
    {"constructor": "inline", "elements": ["a"], "imp": [["a", "a"]]},
    {"constructor": "boolean", "atoms": -1},
    {"constructor": "powerset", "carrier": ["r"], "app": [["q"]]},
    {"constructor": "inline", "elements": ["a"]},
])
def test_malformed_specs(spec):
    with pytest.raises(AlgebraFormatError):
        algebra_from_spec(spec)


def test_file_errors(tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text("{nope")
    with pytest.raises(AlgebraFormatError):
        load_algebra(str(bad))
    with pytest.raises(AlgebraFormatError):
        load_algebra(str(tmp_path / "missing.alg"))
    with pytest.raises(AlgebraFormatError):
        builtin("nosuch")


def test_seed_files(tmp_path):
    alg = builtin("b2")
    p = tmp_path / "seeds.json"
    p.write_text(json.dumps({"seeds": ["{}", "{{}: 1}"], "extend": ["pair"]}))
    U = load_seeds(str(p), alg, 100)
    assert U.provenance["kind"] == "curated" and len(U) >= 3
    p.write_text(json.dumps({"seeds": ["{oops"]}))
    with pytest.raises(AlgebraFormatError):
        load_seeds(str(p), alg, 100)
    p.write_text(json.dumps([]))
    with pytest.raises(AlgebraFormatError):
        load_seeds(str(p), alg, 100)


def test_sample_manifest():
    s = load_samples()
    assert s["version"] == 1
    assert len(s["sep"]) == 3 and len(s["ind"]) == 3 and len(s["col"]) == 2
    assert len(s["corpus"]) >= 8


def test_corpus_files(tmp_path):
    p = tmp_path / "corpus.json"
    p.write_text(json.dumps(["x in y", {"phi": "forall x. x = x"}, {"phi": "x = y", "ctx": ["y", "x"]}]))
    items = load_corpus(str(p))
    assert [ctx for _, ctx in items] == [("x", "y"), (), ("y", "x")]
    p.write_text(json.dumps([3]))
    with pytest.raises(AlgebraFormatError):
        load_corpus(str(p))
    with pytest.raises(AlgebraFormatError):
        load_corpus(str(tmp_path / "missing.json"))

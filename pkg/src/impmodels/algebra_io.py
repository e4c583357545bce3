"""JSON definitions of algebras (``.alg`` files), seed files and builtins.

An algebra file is a JSON object with a ``constructor`` key:

``inline``
    ``elements`` (labels), ``leq`` (pairs of labels generating the order by
    reflexive-transitive closure), ``imp`` (row-major table of labels, or a
    nested object ``{a: {b: a->b}}``) and ``separator`` (labels, default
    the top element).
``heyting``
    ``elements`` and ``leq`` only; the implication is the Heyting one.
``boolean``
    ``atoms``: the powerset algebra on that many atoms.
``powerset``
    ``carrier`` and ``app`` (application table of carrier items): the
    powerset algebra of a finite total combinatory algebra.
``pca-completion``
    ``of``: another algebra object, or the name of a builtin.

An optional ``name`` labels reports.
"""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .errors import AlgebraFormatError, NameSyntaxError
from .finite_order import build_lattice, build_poset
from .imp_algebra import (
    BUILTIN, CombinatoryAlgebra, ImpAlgebra, from_boolean, from_combinatory, from_heyting,
    pca_completion,
)
from .set_universe import build_curated, parse_name

CONSTRUCTORS = ("inline", "heyting", "boolean", "powerset", "pca-completion")


def _need(spec, key):
    if key not in spec:
        raise AlgebraFormatError(f"missing key {key!r} for constructor {spec.get('constructor')!r}")
    return spec[key]


def _order(spec):
    labels = [str(x) for x in _need(spec, "elements")]
    if len(set(labels)) != len(labels):
        raise AlgebraFormatError("duplicate element labels")
    n = len(labels)
    if n == 0:
        raise AlgebraFormatError("an algebra needs at least one element")
    idx = {lab: i for i, lab in enumerate(labels)}
    rel = [[i == j for j in range(n)] for i in range(n)]
    for pair in spec.get("leq", []):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise AlgebraFormatError(f"leq entries must be pairs, got {pair!r}")
        a, b = (_label_index(idx, x) for x in pair)
        rel[a][b] = True
    for k in range(n):
        for i in range(n):
            if rel[i][k]:
                for j in range(n):
                    if rel[k][j]:
                        rel[i][j] = True
    pairs = [(i, j) for i in range(n) for j in range(n) if rel[i][j]]
    return build_lattice(build_poset(n, pairs, labels)), idx


def _label_index(idx, x):
    try:
        return idx[str(x)]
    except KeyError:
        raise AlgebraFormatError(f"unknown element {x!r}") from None


def _imp_table(spec, idx, labels):
    raw = _need(spec, "imp")
    n = len(labels)
    if isinstance(raw, dict):
        try:
            return [[_label_index(idx, raw[a][b]) for b in labels] for a in labels]
        except (KeyError, TypeError):
            raise AlgebraFormatError("imp object must map every pair of elements") from None
    if not isinstance(raw, list) or len(raw) != n or any(
            not isinstance(row, list) or len(row) != n for row in raw):
        raise AlgebraFormatError(f"imp must be a {n}x{n} table")
    return [[_label_index(idx, x) for x in row] for row in raw]


def _separator(spec, idx, lattice):
    if "separator" not in spec:
        return {lattice.top}
    return {_label_index(idx, x) for x in spec["separator"]}


def algebra_from_spec(spec, name=None) -> ImpAlgebra:
    """Build (without validating, except for pca-completion) the algebra a JSON definition describes."""
    if isinstance(spec, str):
        return builtin(spec)
    if not isinstance(spec, dict):
        raise AlgebraFormatError("an algebra definition must be a JSON object")
    kind = spec.get("constructor", "inline" if "imp" in spec else "heyting")
    name = spec.get("name", name)
    if kind == "inline":
        lat, idx = _order(spec)
        imp = _imp_table(spec, idx, lat.labels)
        return ImpAlgebra(lat, imp, _separator(spec, idx, lat), name=name or "inline")
    if kind == "heyting":
        lat, idx = _order(spec)
        alg = from_heyting(lat, name=name or "heyting")
        if "separator" in spec:
            alg = ImpAlgebra(lat, alg.imp, _separator(spec, idx, lat), name=alg.name)
        return alg
    if kind == "boolean":
        atoms = _need(spec, "atoms")
        if not isinstance(atoms, int) or atoms < 0:
            raise AlgebraFormatError("atoms must be a non-negative integer")
        return from_boolean(atoms, name=name)
    if kind == "powerset":
        carrier = tuple(str(x) for x in _need(spec, "carrier"))
        pos = {c: i for i, c in enumerate(carrier)}
        try:
            app = tuple(tuple(pos[str(x)] for x in row) for row in _need(spec, "app"))
            ca = CombinatoryAlgebra(carrier, app)
        except (KeyError, TypeError, ValueError) as exc:
            raise AlgebraFormatError(f"bad application table: {exc}") from None
        return from_combinatory(ca, name=name)
    if kind == "pca-completion":
        return pca_completion(algebra_from_spec(_need(spec, "of")), name=name)
    raise AlgebraFormatError(f"unknown constructor {kind!r}; expected one of {CONSTRUCTORS}")


def builtin(name) -> ImpAlgebra:
    try:
        return BUILTIN[name.lower()]()
    except KeyError:
        raise AlgebraFormatError(
            f"no builtin algebra {name!r}; known: {', '.join(sorted(BUILTIN))}") from None


def read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise AlgebraFormatError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise AlgebraFormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def load_algebra(source) -> ImpAlgebra:
    """A builtin name, a path to an .alg file, or the name of a shipped file."""
    if source.lower() in BUILTIN:
        return builtin(source)
    path = Path(source)
    if not path.exists():
        shipped = resources.files("impmodels").joinpath(f"data/{source}")
        if shipped.is_file():
            return algebra_from_spec(json.loads(shipped.read_text()), name=Path(source).stem)
    return algebra_from_spec(read_json(path), name=path.stem)


def algebra_to_spec(alg) -> dict:
    """Inline description that rebuilds the same algebra."""
    labels = list(alg.labels)
    leq = alg.lattice.poset.leq
    return {
        "name": alg.name,
        "constructor": "inline",
        "elements": labels,
        "leq": [[labels[a], labels[b]] for a in range(alg.n) for b in range(alg.n)
                if a != b and leq[a][b]],
        "imp": [[labels[x] for x in row] for row in alg.imp],
        "separator": [labels[s] for s in sorted(alg.separator)],
    }


def load_seeds(path, alg, budget):
    """Seed file: {"seeds": [name literals], "extend": [constructors]}."""
    spec = read_json(path)
    if not isinstance(spec, dict) or "seeds" not in spec:
        raise AlgebraFormatError(f"{path}: seed file needs a 'seeds' list")
    try:
        seeds = [parse_name(s, alg) for s in spec["seeds"]]
    except NameSyntaxError as exc:
        raise AlgebraFormatError(f"{path}: {exc}") from None
    return build_curated(seeds, alg, budget=budget, extend=tuple(spec.get("extend", ())))

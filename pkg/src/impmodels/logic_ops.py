"""Implicative connectives, quantifiers and the finite tripos slice.

Quantifiers take iterables of elements.  Since meets are idempotent only
the *set* of values matters, which is what the caches key on.
"""
from __future__ import annotations

from dataclasses import dataclass


def _table(alg, key, build):
    t = alg.cache.get(key)
    if t is None:
        t = alg.cache[key] = build(alg)
    return t


def _times_table(alg):
    imp = alg.imp
    r = range(alg.n)
    return tuple(
        tuple(alg.meet_all(imp[imp[a][imp[b][x]]][x] for x in r) for b in r) for a in r
    )


def _plus_table(alg):
    imp = alg.imp
    r = range(alg.n)
    return tuple(
        tuple(alg.meet_all(imp[imp[a][x]][imp[imp[b][x]][x]] for x in r) for b in r)
        for a in r
    )


def times_table(alg):
    return _table(alg, "times", _times_table)


def plus_table(alg):
    return _table(alg, "plus", _plus_table)


def times(alg, a, b):
    return times_table(alg)[a][b]


def plus(alg, a, b):
    return plus_table(alg)[a][b]


def iforall(alg, values):
    return alg.meet_all(values)


def iexists(alg, values):
    """meet over x of ((meet_i (a_i -> x)) -> x)."""
    vals = frozenset(values)
    memo = _table(alg, "iexists", lambda _: {})
    r = memo.get(vals)
    if r is None:
        imp = alg.imp
        acc = alg.top
        meet = alg.lattice.meet_table
        for x in range(alg.n):
            hyp = alg.meet_all(imp[a][x] for a in vals)
            acc = meet[acc][imp[hyp][x]]
        r = memo[vals] = acc
    return r


def entails(alg, a, b) -> bool:
    return alg.imp[a][b] in alg.separator


def equiv(alg, a, b) -> bool:
    return entails(alg, a, b) and entails(alg, b, a)


# -- predicate families ------------------------------------------------------------------

@dataclass(frozen=True)
class PredFamily:
    """A map from a finite index set to algebra elements."""
    index: tuple
    values: tuple

    def __post_init__(self):
        if len(self.index) != len(self.values):
            raise ValueError("family must be total on its index set")

    @classmethod
    def from_dict(cls, d):
        keys = tuple(d)
        return cls(keys, tuple(d[k] for k in keys))

    @classmethod
    def from_function(cls, index, fn):
        index = tuple(index)
        return cls(index, tuple(fn(i) for i in index))

    def __getitem__(self, i):
        return self.values[self.index.index(i)]

    def as_dict(self):
        return dict(zip(self.index, self.values))


def fam_value(alg, phi: PredFamily, psi: PredFamily):
    """meet over i of (phi(i) -> psi(i)); families must share the index set."""
    if set(phi.index) != set(psi.index):
        raise ValueError("families have different index sets")
    other = psi.as_dict()
    imp = alg.imp
    return alg.meet_all(imp[v][other[i]] for i, v in zip(phi.index, phi.values))


def fam_entails(alg, phi: PredFamily, psi: PredFamily) -> bool:
    return fam_value(alg, phi, psi) in alg.separator


def fam_equiv(alg, phi: PredFamily, psi: PredFamily) -> bool:
    return fam_entails(alg, phi, psi) and fam_entails(alg, psi, phi)


def entails_pointwise(alg, lhs, rhs) -> bool:
    """Same as fam_entails, for two parallel sequences of values."""
    imp = alg.imp
    return alg.meet_all(imp[a][b] for a, b in zip(lhs, rhs)) in alg.separator


def reindex(phi: PredFamily, f, domain) -> PredFamily:
    """phi o f, as a family over ``domain``; f is a dict or a callable."""
    fn = f.__getitem__ if isinstance(f, dict) else f
    vals = phi.as_dict()
    return PredFamily.from_function(domain, lambda i: vals[fn(i)])


def quantify_along(alg, phi: PredFamily, f, codomain, mode) -> PredFamily:
    """Left (``exists``) or right (``forall``) adjoint of reindexing along f."""
    fn = f.__getitem__ if isinstance(f, dict) else f
    fibers = {j: [] for j in codomain}
    for i, v in zip(phi.index, phi.values):
        fibers[fn(i)].append(v)
    if mode == "exists":
        q = lambda vs: iexists(alg, vs)
    elif mode == "forall":
        q = lambda vs: iforall(alg, vs)
    else:
        raise ValueError(f"mode must be 'exists' or 'forall', not {mode!r}")
    return PredFamily.from_function(codomain, lambda j: q(fibers[j]))


def pullback(f, dom_f, g, dom_g):
    """Pullback square of f: I -> J and g: K -> J as (P, pi1, pi2)."""
    fn = f.__getitem__ if isinstance(f, dict) else f
    gn = g.__getitem__ if isinstance(g, dict) else g
    P = tuple((i, k) for i in dom_f for k in dom_g if fn(i) == gn(k))
    return P, (lambda pk: pk[0]), (lambda pk: pk[1])


def beck_chevalley_holds(alg, phi: PredFamily, f, g, dom_g, codomain, mode="exists") -> bool:
    """g*(Q_f phi) is equivalent to Q_pi2(pi1* phi) over the pullback."""
    P, pi1, pi2 = pullback(f, phi.index, g, dom_g)
    lhs = reindex(quantify_along(alg, phi, f, codomain, mode), g, dom_g)
    rhs = quantify_along(alg, reindex(phi, pi1, P), pi2, dom_g, mode)
    return fam_equiv(alg, lhs, rhs)

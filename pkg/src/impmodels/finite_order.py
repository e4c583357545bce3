"""Finite posets and complete lattices with dense meet/join tables.

Elements are the integers ``0..n-1``; ``labels`` only matter for printing.
"""
from __future__ import annotations

from itertools import combinations

from .errors import (
    LatticeTooLarge,
    NoBottom,
    NotALattice,
    NotAPartialOrder,
    NotHeyting,
    NoTop,
)

MAX_LATTICE_SIZE = 64


class FinitePoset:
    __slots__ = ("n", "leq", "labels")

    def __init__(self, n, leq, labels=None):
        self.n = n
        self.leq = leq
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))

    @property
    def elements(self):
        return range(self.n)

    def __repr__(self):
        return f"FinitePoset(n={self.n})"


def build_poset(n, leq_pairs, labels=None) -> FinitePoset:
    """Check that ``leq_pairs`` already is a partial order on ``range(n)``.

    No closure is taken: a missing reflexive or transitive pair is an error.
    """
    leq = [[False] * n for _ in range(n)]
    for a, b in leq_pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise ValueError(f"pair ({a}, {b}) out of range for n={n}")
        leq[a][b] = True
    for a in range(n):
        if not leq[a][a]:
            raise NotAPartialOrder("reflexivity", (a, a))
    for a in range(n):
        for b in range(a + 1, n):
            if leq[a][b] and leq[b][a]:
                raise NotAPartialOrder("antisymmetry", (a, b))
    for a in range(n):
        for b in range(n):
            if not leq[a][b]:
                continue
            for c in range(n):
                if leq[b][c] and not leq[a][c]:
                    raise NotAPartialOrder("transitivity", (a, b, c))
    if labels is not None and len(labels) != n:
        raise ValueError("labels must have one entry per element")
    return FinitePoset(n, tuple(tuple(row) for row in leq), labels)


class FiniteLattice:
    __slots__ = ("poset", "meet_table", "join_table", "top", "bottom", "__weakref__")

    def __init__(self, poset, meet_table, join_table, top, bottom):
        self.poset = poset
        self.meet_table = meet_table
        self.join_table = join_table
        self.top = top
        self.bottom = bottom

    @property
    def n(self):
        return self.poset.n

    @property
    def labels(self):
        return self.poset.labels

    def leq(self, a, b):
        return self.poset.leq[a][b]

    def meet(self, a, b):
        return self.meet_table[a][b]

    def join(self, a, b):
        return self.join_table[a][b]

    def meet_all(self, elems):
        m = self.meet_table
        acc = self.top
        for e in elems:
            acc = m[acc][e]
        return acc

    def join_all(self, elems):
        j = self.join_table
        acc = self.bottom
        for e in elems:
            acc = j[acc][e]
        return acc

    def label(self, a):
        return self.poset.labels[a]

    def index(self, label):
        try:
            return self.poset.labels.index(label)
        except ValueError:
            raise KeyError(f"no element labelled {label!r}") from None

    def __repr__(self):
        return f"FiniteLattice(n={self.n}, labels={list(self.labels)})"


def _extremum(candidates, leq, greatest):
    for c in candidates:
        if all((leq[d][c] if greatest else leq[c][d]) for d in candidates):
            return c
    return None


def build_lattice(p: FinitePoset, max_size=MAX_LATTICE_SIZE) -> FiniteLattice:
    """Fill meet/join tables by brute-force glb/lub search.

    Completeness is not checked subset by subset. In a finite poset with a
    top, a bottom and binary glbs/lubs, every subset has a glb (fold the
    binary meet, starting from top; the empty set gets top) and dually for
    lubs, so these checks are enough.
    """
    n = p.n
    if n > max_size:
        raise LatticeTooLarge(f"{n} elements exceeds cap {max_size}")
    leq = p.leq
    elems = list(range(n))
    top = _extremum(elems, leq, greatest=True)
    if top is None:
        raise NoTop()
    bottom = _extremum(elems, leq, greatest=False)
    if bottom is None:
        raise NoBottom()
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            lower = [c for c in elems if leq[c][a] and leq[c][b]]
            g = _extremum(lower, leq, greatest=True)
            if g is None:
                raise NotALattice(f"{{{p.labels[a]}, {p.labels[b]}}} has no meet", (a, b))
            upper = [c for c in elems if leq[a][c] and leq[b][c]]
            lub = _extremum(upper, leq, greatest=False)
            if lub is None:
                raise NotALattice(f"{{{p.labels[a]}, {p.labels[b]}}} has no join", (a, b))
            meet[a][b] = meet[b][a] = g
            join[a][b] = join[b][a] = lub
    return FiniteLattice(p, tuple(map(tuple, meet)), tuple(map(tuple, join)), top, bottom)


def meet_all(l: FiniteLattice, s):
    return l.meet_all(s)


def join_all(l: FiniteLattice, s):
    return l.join_all(s)


def heyting_implication(l: FiniteLattice):
    """Relative pseudo-complement table, or NotHeyting with a witness pair."""
    n = l.n
    leq = l.poset.leq
    meet = l.meet_table
    imp = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            c = l.join_all(c for c in range(n) if leq[meet[a][c]][b])
            if not leq[meet[a][c]][b]:
                raise NotHeyting(l.label(a), l.label(b))
            imp[a][b] = c
    return tuple(map(tuple, imp))


def is_boolean(l: FiniteLattice, imp) -> bool:
    bot = l.bottom
    return all(imp[imp[a][bot]][bot] == a for a in range(l.n))


# -- standard lattices ------------------------------------------------------

def chain(n, labels=None) -> FiniteLattice:
    pairs = [(a, b) for a in range(n) for b in range(a, n)]
    return build_lattice(build_poset(n, pairs, labels))


def powerset_lattice(k, labels=None) -> FiniteLattice:
    """Subsets of a k-element set, encoded as bitmasks."""
    n = 1 << k
    pairs = [(a, b) for a in range(n) for b in range(n) if a & ~b == 0]
    if labels is None:
        labels = [_mask_label(m, k) for m in range(n)]
    return build_lattice(build_poset(n, pairs, labels))


def _mask_label(mask, k, names=None):
    names = names or [f"a{i}" for i in range(k)]
    return "{" + ",".join(names[i] for i in range(k) if mask >> i & 1) + "}"


def diamond() -> FiniteLattice:
    # bot < a, b < top
    pairs = [(0, 0), (1, 1), (2, 2), (3, 3), (0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]
    return build_lattice(build_poset(4, pairs, ["bot", "a", "b", "top"]))


def m3() -> FiniteLattice:
    pairs = [(i, i) for i in range(5)]
    pairs += [(0, i) for i in (1, 2, 3, 4)] + [(i, 4) for i in (1, 2, 3)]
    return build_lattice(build_poset(5, pairs, ["bot", "a", "b", "c", "top"]))


def all_subsets(n, max_size=None):
    top = n if max_size is None else min(n, max_size)
    for k in range(top + 1):
        yield from combinations(range(n), k)

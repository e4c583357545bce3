"""Implicative algebras (A, <=, ->, Sigma) over finite lattices."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np

from .errors import CarrierTooLarge, InvalidAlgebra
from .finite_order import (
    FiniteLattice,
    build_lattice,
    build_poset,
    chain,
    diamond,
    heyting_implication,
    powerset_lattice,
)

EXHAUSTIVE_SUBSET_LIMIT = 12
RANDOM_SUBSETS = 10_000
MAX_CA_CARRIER = 5


class ImpAlgebra:
    """A finite implicative algebra.

    ``imp`` is the dense table of the implication and ``separator`` a set of
    element indices.  Nothing is validated on construction; run
    :func:`validate` (the constructors below do so where it matters).
    Derived tables (application, product, ...) are cached in ``cache`` and
    never invalidated, so instances must not be mutated.
    """

    def __init__(self, lattice: FiniteLattice, imp, separator, name=None):
        self.lattice = lattice
        self.imp = tuple(tuple(int(x) for x in row) for row in imp)
        self.separator = frozenset(int(s) for s in separator)
        self.name = name or "algebra"
        self.report = None
        self.cache = {}

    # lattice shortcuts
    @property
    def n(self):
        return self.lattice.n

    @property
    def top(self):
        return self.lattice.top

    @property
    def bottom(self):
        return self.lattice.bottom

    @property
    def elements(self):
        return range(self.lattice.n)

    @property
    def labels(self):
        return self.lattice.labels

    def label(self, a):
        return self.lattice.labels[a]

    def index(self, label):
        return self.lattice.index(label)

    def leq(self, a, b):
        return self.lattice.poset.leq[a][b]

    def meet(self, a, b):
        return self.lattice.meet_table[a][b]

    def join(self, a, b):
        return self.lattice.join_table[a][b]

    def meet_all(self, elems):
        return self.lattice.meet_all(elems)

    def join_all(self, elems):
        return self.lattice.join_all(elems)

    def arrow(self, a, b):
        return self.imp[a][b]

    def neg(self, a):
        return self.imp[a][self.lattice.bottom]

    def in_sigma(self, a):
        return a in self.separator

    @cached_property
    def app_table(self):
        n = self.n
        leq = self.lattice.poset.leq
        imp = self.imp
        return tuple(
            tuple(self.meet_all(x for x in range(n) if leq[a][imp[b][x]]) for b in range(n))
            for a in range(n)
        )

    def app(self, a, b):
        return self.app_table[a][b]

    @cached_property
    def K(self):
        imp = self.imp
        r = range(self.n)
        return self.meet_all(imp[a][imp[b][a]] for a in r for b in r)

    @cached_property
    def S(self):
        imp = self.imp
        r = range(self.n)
        return self.meet_all(
            imp[imp[a][imp[b][c]]][imp[imp[a][b]][imp[a][c]]]
            for a in r for b in r for c in r
        )

    @cached_property
    def np_leq(self):
        return np.array(self.lattice.poset.leq, dtype=bool)

    @cached_property
    def np_imp(self):
        return np.array(self.imp, dtype=np.intp)

    @cached_property
    def np_meet(self):
        return np.array(self.lattice.meet_table, dtype=np.intp)

    def __repr__(self):
        sep = sorted(self.label(s) for s in self.separator)
        return f"ImpAlgebra({self.name}, n={self.n}, separator={sep})"


def application(alg: ImpAlgebra, a, b):
    """a . b = meet of all x with a <= (b -> x)."""
    return alg.app_table[a][b]


def combinator_K(alg: ImpAlgebra):
    return alg.K


def combinator_S(alg: ImpAlgebra):
    return alg.S


# -- validation ---------------------------------------------------------------

@dataclass
class Violation:
    clause: str
    witness: tuple

    def render(self, alg=None):
        if alg is None:
            w = self.witness
        else:
            w = tuple(_render_witness(alg, x) for x in self.witness)
        return f"{self.clause}: {w}"


def _render_witness(alg, x):
    if isinstance(x, (tuple, list, frozenset, set)):
        return tuple(alg.label(i) for i in sorted(x))
    return alg.label(x)


@dataclass
class ValidationReport:
    algebra: str
    violations: list = field(default_factory=list)
    labels: tuple = ()

    @property
    def valid(self):
        return not self.violations

    def clauses(self):
        return sorted({v.clause for v in self.violations})

    def render(self):
        if self.valid:
            return f"{self.algebra}: valid"
        lines = [f"{self.algebra}: invalid"]
        for v in self.violations:
            lines.append("  " + v.render(_Labeller(self.labels)))
        return "\n".join(lines)

    def as_dict(self):
        lab = _Labeller(self.labels)
        return {
            "algebra": self.algebra,
            "valid": self.valid,
            "violations": [
                {"clause": v.clause, "witness": [_json_witness(lab, x) for x in v.witness]}
                for v in self.violations
            ],
        }


class _Labeller:
    def __init__(self, labels):
        self.labels = labels

    def label(self, a):
        return self.labels[a] if self.labels else str(a)


def _json_witness(lab, x):
    if isinstance(x, (tuple, list, frozenset, set)):
        return [lab.label(i) for i in sorted(x)]
    return lab.label(x)


def _subsets(n, limit, samples, rng):
    if n <= limit:
        for k in range(n + 1):
            yield from combinations(range(n), k)
    else:
        yield ()
        for _ in range(samples):
            yield tuple(i for i in range(n) if rng.random() < 0.5)


def validate(alg: ImpAlgebra, exhaustive_limit=EXHAUSTIVE_SUBSET_LIMIT,
             samples=RANDOM_SUBSETS, seed=0) -> ValidationReport:
    """Check every clause of the implicative-algebra definition.

    Only the first witness per clause is recorded.
    """
    report = ValidationReport(alg.name, labels=alg.labels)
    n = alg.n
    imp = alg.imp
    leq = alg.lattice.poset.leq
    seen = set()

    def fail(clause, witness):
        if clause not in seen:
            seen.add(clause)
            report.violations.append(Violation(clause, witness))

    if len(imp) != n or any(len(row) != n for row in imp):
        fail("imp-shape", (n,))
        return report
    if any(not 0 <= x < n for row in imp for x in row):
        fail("imp-range", ())
        return report
    if any(not 0 <= s < n for s in alg.separator):
        fail("separator-range", ())
        return report

    for a in range(n):
        for a2 in range(n):
            if not leq[a][a2]:
                continue
            for b in range(n):
                if not leq[imp[a2][b]][imp[a][b]]:
                    fail("imp-antimonotone-first", (a, a2, b))
                if not leq[imp[b][a]][imp[b][a2]]:
                    fail("imp-monotone-second", (b, a, a2))

    rng = random.Random(seed)
    for B in _subsets(n, exhaustive_limit, samples, rng):
        m = alg.meet_all(B)
        for a in range(n):
            if imp[a][m] != alg.meet_all(imp[a][b] for b in B):
                fail("imp-meet-distribution", (a, frozenset(B)))
                break
        if "imp-meet-distribution" in seen:
            break

    sigma = alg.separator
    for s in sigma:
        for t in range(n):
            if leq[s][t] and t not in sigma:
                fail("separator-upward-closed", (s, t))
    for a in sigma:
        for b in range(n):
            if imp[a][b] in sigma and b not in sigma:
                fail("separator-modus-ponens", (a, b))
    if alg.K not in sigma:
        fail("separator-contains-K", (alg.K,))
    if alg.S not in sigma:
        fail("separator-contains-S", (alg.S,))
    return report


def check_valid(alg: ImpAlgebra) -> ImpAlgebra:
    rep = validate(alg)
    alg.report = rep
    if not rep.valid:
        raise InvalidAlgebra(rep)
    return alg


# -- constructors ---------------------------------------------------------------

def from_heyting(l: FiniteLattice, name=None) -> ImpAlgebra:
    return ImpAlgebra(l, heyting_implication(l), {l.top}, name=name or "heyting")


def from_boolean(atoms: int, name=None) -> ImpAlgebra:
    return from_heyting(powerset_lattice(atoms), name=name or f"bool{1 << atoms}")


@dataclass(frozen=True)
class CombinatoryAlgebra:
    """A finite carrier with a total application table ``app[r][s] = r.s``."""
    carrier: tuple
    app: tuple

    def __post_init__(self):
        n = len(self.carrier)
        if len(self.app) != n or any(len(row) != n for row in self.app):
            raise ValueError("application table must be total on the carrier")
        if any(not 0 <= x < n for row in self.app for x in row):
            raise ValueError("application table leaves the carrier")


def from_combinatory(c: CombinatoryAlgebra, name=None) -> ImpAlgebra:
    """Powerset algebra (P(R), subset, =>, P(R) minus the empty set).

    No search for k/s-like elements is made: the attached ``report`` says
    whether the result is an implicative algebra.
    """
    k = len(c.carrier)
    if k > MAX_CA_CARRIER:
        raise CarrierTooLarge(f"|R|={k} exceeds {MAX_CA_CARRIER}")
    n = 1 << k
    labels = ["{" + ",".join(str(c.carrier[i]) for i in range(k) if m >> i & 1) + "}"
              for m in range(n)]
    lat = powerset_lattice(k, labels)
    imp = [[0] * n for _ in range(n)]
    for A in range(n):
        members = [i for i in range(k) if A >> i & 1]
        for B in range(n):
            mask = 0
            for r in range(k):
                if all(B >> c.app[r][a] & 1 for a in members):
                    mask |= 1 << r
            imp[A][B] = mask
    alg = ImpAlgebra(lat, imp, range(1, n), name=name or "powerset-ca")
    alg.report = validate(alg)
    return alg


def pca_completion(q: ImpAlgebra, name=None) -> ImpAlgebra:
    """Adjoin a fresh top T* to a quasi-implicative algebra.

    x -> T* = T*, T* -> x = (old top) -> x, and bot -> x = T* so the
    vacuous implication stays maximal; everything else is inherited.
    Raises InvalidAlgebra when the result fails validation.
    """
    n = q.n
    new_top = n
    old_leq = q.lattice.poset.leq
    pairs = [(a, b) for a in range(n) for b in range(n) if old_leq[a][b]]
    pairs += [(a, new_top) for a in range(n + 1)]
    labels = list(q.labels) + [_fresh_label(q.labels)]
    lat = build_lattice(build_poset(n + 1, pairs, labels))
    bot = q.bottom
    imp = [[0] * (n + 1) for _ in range(n + 1)]
    for a in range(n + 1):
        for b in range(n + 1):
            if b == new_top or a == bot:
                imp[a][b] = new_top
            elif a == new_top:
                imp[a][b] = q.imp[q.top][b]
            else:
                imp[a][b] = q.imp[a][b]
    alg = ImpAlgebra(lat, imp, set(q.separator) | {new_top},
                     name=name or f"pca-completion({q.name})")
    return check_valid(alg)


def _fresh_label(labels):
    lab = "T*"
    while lab in labels:
        lab += "*"
    return lab


# -- structural classification ----------------------------------------------------

def peirce_meet(alg: ImpAlgebra):
    imp = alg.imp
    r = range(alg.n)
    return alg.meet_all(imp[imp[imp[a][b]][a]][a] for a in r for b in r)


def is_classical(alg: ImpAlgebra) -> bool:
    return peirce_meet(alg) in alg.separator


def join_compatibility_witness(alg: ImpAlgebra, exhaustive_limit=EXHAUSTIVE_SUBSET_LIMIT,
                               samples=RANDOM_SUBSETS, seed=0):
    """First (family, b) with meet_i(a_i -> b) != (join_i a_i) -> b, or None."""
    imp = alg.imp
    rng = random.Random(seed)
    for F in _subsets(alg.n, exhaustive_limit, samples, rng):
        j = alg.join_all(F)
        for b in range(alg.n):
            if alg.meet_all(imp[a][b] for a in F) != imp[j][b]:
                return F, b
    return None


def is_join_compatible(alg: ImpAlgebra, **kw) -> bool:
    key = "join_compatible"
    if key not in alg.cache:
        alg.cache[key] = join_compatibility_witness(alg, **kw) is None
    return alg.cache[key]


# -- named algebras ---------------------------------------------------------------

def b2():
    return from_heyting(chain(2, ["0", "1"]), name="B2")


def h3():
    return from_heyting(chain(3, ["0", "m", "1"]), name="H3")


def bool4():
    return from_boolean(2, name="Bool4")


def diamond_heyting():
    return from_heyting(diamond(), name="Diamond")


def h5():
    """Diamond with a new top: bot < a, b < c < top (Heyting, not Boolean)."""
    pairs = [(i, i) for i in range(5)]
    pairs += [(0, 1), (0, 2), (0, 3), (0, 4), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)]
    lat = build_lattice(build_poset(5, pairs, ["bot", "a", "b", "c", "top"]))
    return from_heyting(lat, name="H5")


def pca_b2():
    return pca_completion(b2(), name="PCA(B2)")


BUILTIN = {
    "b2": b2,
    "h3": h3,
    "bool4": bool4,
    "diamond": diamond_heyting,
    "h5": h5,
    "pca-b2": pca_b2,
}

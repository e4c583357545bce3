"""Alternative interpretations: join-based existentials and Krivine's
non-membership-first reading, with the set-negation operator relating it
to the standard one.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .errors import NotClassical, NotJoinCompatible, UniverseNotNegationClosed
from .imp_algebra import is_classical, is_join_compatible
from .interpreter import RELATIVE, Evaluator, _as_formula, evaluator
from .logic_ops import entails_pointwise, times_table
from .set_universe import Relations, make_name

STANDARD, JOIN, KRIVINE = "standard", "join", "krivine"
VARIANTS = (STANDARD, JOIN, KRIVINE)


def require_join_compatible(alg):
    if not is_join_compatible(alg):
        raise NotJoinCompatible(f"{alg.name} is not join-compatible")


def require_classical(alg):
    if not is_classical(alg):
        raise NotClassical(f"{alg.name} is not classical")


def join_relations(alg) -> Relations:
    r = alg.cache.get("join-relations")
    if r is None:
        r = alg.cache["join-relations"] = Relations(alg, exists=alg.join_all)
    return r


class KrivineRelations:
    """notmem / subset / eq in the non-membership-first reading, plus mem := ~notmem."""

    def __init__(self, alg):
        self.alg = alg
        self.imp = alg.imp
        self.meet = alg.lattice.meet_table
        self.times = times_table(alg)
        self._notmem = {}
        self._sub = {}
        self._eq = {}

    def notmem(self, a, b):
        key = (a, b)
        r = self._notmem.get(key)
        if r is None:
            imp, meet = self.imp, self.meet
            acc = self.alg.top
            for t, v in b.entries:
                acc = meet[acc][imp[self.eq(t, a)][v]]
            r = self._notmem[key] = acc
        return r

    def subset(self, a, b):
        key = (a, b)
        r = self._sub.get(key)
        if r is None:
            imp, meet = self.imp, self.meet
            acc = self.alg.top
            for t, v in a.entries:
                acc = meet[acc][imp[self.notmem(t, b)][v]]
            r = self._sub[key] = acc
        return r

    def eq(self, a, b):
        key = (a, b)
        r = self._eq.get(key)
        if r is None:
            r = self._eq[key] = self.times[self.subset(a, b)][self.subset(b, a)]
        return r

    def mem(self, a, b):
        return self.imp[self.notmem(a, b)][self.alg.bottom]


def krivine_relations_for(alg) -> KrivineRelations:
    require_classical(alg)
    r = alg.cache.get("krivine-relations")
    if r is None:
        r = alg.cache["krivine-relations"] = KrivineRelations(alg)
    return r


def krivine_relations(a, b, alg, U=None):
    """(notmem, eq, subset) for the pair (a, b)."""
    k = krivine_relations_for(alg)
    return k.notmem(a, b), k.eq(a, b), k.subset(a, b)


def set_negation(a, alg):
    memo = alg.cache.setdefault("set-negation", {})
    r = memo.get(a)
    if r is None:
        neg = alg.imp
        bot = alg.bottom
        r = memo[a] = make_name({set_negation(u, alg): neg[v][bot] for u, v in a.entries})
    return r


def negation_closure(U, alg):
    """Smallest extension of U closed under set negation."""
    names = set(U)
    frontier = list(U)
    while frontier:
        fresh = []
        for a in frontier:
            b = set_negation(a, alg)
            if b not in names:
                names.add(b)
                fresh.append(b)
        frontier = fresh
    if len(names) == len(U):
        return U
    return U.extended(names - set(U), "set-negation closure")


def require_negation_closed(U, alg):
    missing = [a for a in U if set_negation(a, alg) not in U]
    if missing:
        raise UniverseNotNegationClosed(
            f"{len(missing)} names lack their set negation, e.g. {missing[0]!r}")


def make_evaluator(alg, U, variant) -> Evaluator:
    if variant == JOIN:
        require_join_compatible(alg)
        return Evaluator(alg, U, rel=join_relations(alg), exists=alg.join_all, variant=JOIN)
    if variant == KRIVINE:
        require_classical(alg)
        require_negation_closed(U, alg)
        return Evaluator(alg, U, rel=krivine_relations_for(alg), variant=KRIVINE)
    if variant == STANDARD:
        return Evaluator(alg, U)
    raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS}")


def interpret_J(phi, ctx, args, alg, U):
    return evaluator(alg, U, JOIN).value(_as_formula(phi), ctx, args)


def interpret_K(phi, ctx, args, alg, U):
    return evaluator(alg, U, KRIVINE).value(_as_formula(phi), ctx, args)


# -- equivalence checks --------------------------------------------------------------------

@dataclass
class EquivalenceResult:
    formula: str
    ctx: tuple
    forward: bool
    backward: bool
    identical: bool

    @property
    def holds(self):
        return self.forward and self.backward


@dataclass
class EquivalenceReport:
    variant: str
    algebra: str
    universe_size: int
    results: list
    extra: dict = field(default_factory=dict)
    scope: str = RELATIVE

    @property
    def holds(self):
        return all(r.holds for r in self.results) and all(self.extra.values())

    def as_dict(self):
        return {
            "variant": self.variant,
            "algebra": self.algebra,
            "universe_size": self.universe_size,
            "scope": self.scope,
            "holds": self.holds,
            "formulas": [
                {"formula": r.formula, "ctx": list(r.ctx), "forward": r.forward,
                 "backward": r.backward, "identical": r.identical}
                for r in self.results
            ],
            "extra": dict(self.extra),
        }


def _corpus_items(corpus):
    for item in corpus:
        if isinstance(item, (tuple, list)):
            phi, ctx = item
        else:
            phi, ctx = item, ()
        yield _as_formula(phi), tuple(ctx)


def j_equivalence_check(corpus, alg, U) -> EquivalenceReport:
    std = evaluator(alg, U, STANDARD)
    jev = evaluator(alg, U, JOIN)
    results = []
    for phi, ctx in _corpus_items(corpus):
        a = std.family(phi, ctx)
        b = jev.family(phi, ctx)
        results.append(EquivalenceResult(
            str(phi), ctx, entails_pointwise(alg, a, b), entails_pointwise(alg, b, a), a == b))
    return EquivalenceReport(JOIN, alg.name, len(U), results)


def involutivity(alg, U):
    """Validity of forall x (x = double negation of x) in both interpretations."""
    std = evaluator(alg, U, STANDARD).rel
    kr = krivine_relations_for(alg)
    dn = [(a, set_negation(set_negation(a, alg), alg)) for a in U]
    v_std = alg.meet_all(std.eq(a, b) for a, b in dn)
    v_k = alg.meet_all(kr.eq(a, b) for a, b in dn)
    return v_std in alg.separator, v_k in alg.separator


def k_equivalence_check(corpus, alg, U) -> EquivalenceReport:
    """phi at negated parameters (standard) against phi under the Krivine reading."""
    kev = evaluator(alg, U, KRIVINE)
    std = evaluator(alg, U, STANDARD)
    neg = {a: set_negation(a, alg) for a in U}
    results = []
    for phi, ctx in _corpus_items(corpus):
        fs, fk = std.compile(phi, ctx), kev.compile(phi, ctx)
        lhs, rhs = [], []
        for args in product(U.names, repeat=len(ctx)):
            lhs.append(fs(tuple(neg[a] for a in args)))
            rhs.append(fk(args))
        results.append(EquivalenceResult(
            str(phi), ctx, entails_pointwise(alg, lhs, rhs), entails_pointwise(alg, rhs, lhs),
            lhs == rhs))
    inv_std, inv_k = involutivity(alg, U)
    return EquivalenceReport(KRIVINE, alg.name, len(U), results,
                             {"involutive_standard": inv_std, "involutive_krivine": inv_k})

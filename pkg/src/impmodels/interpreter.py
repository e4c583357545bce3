"""Truth-value semantics of set-theory formulas over a finite universe of names.

Formulas are compiled once per context into closures over a positional
environment (a tuple of names, one slot per variable in scope).  Every
non-atomic node memoises its value on the names bound to its own free
variables, so a quantifier body that ignores an outer variable is
evaluated only once per distinct relevant assignment.

All verdicts are relative to the finite universe the quantifiers range over.
"""
from __future__ import annotations

from itertools import product

from .errors import ScopeError
from .formula import (
    And, Bot, Eq, Exists, Forall, Formula, Implies, Mem, Or,
    check_scope, desugar, free_vars, parse_formula,
)
from .logic_ops import iexists, plus_table, times_table
from .set_universe import Universe, relations

RELATIVE = "relative to U"


class Evaluator:
    """Interpretation of formulas for one algebra, universe and relation set.

    ``rel`` supplies ``mem`` and ``eq`` on names; ``exists`` collapses a set
    of values into the existential quantifier.  The defaults give the
    standard interpretation; the variants module swaps them out.
    """

    def __init__(self, alg, universe, rel=None, exists=None, variant="standard"):
        self.alg = alg
        self.universe = universe
        self.names = tuple(universe)
        self.rel = rel or relations(alg)
        self.exists = exists or (lambda vals: iexists(alg, vals))
        self.variant = variant
        self.times = times_table(alg)
        self.plus = plus_table(alg)
        self.imp = alg.imp
        self._compiled = {}

    # -- compilation ---------------------------------------------------------------

    def compile(self, f: Formula, ctx):
        ctx = tuple(ctx)
        key = (f, ctx)
        fn = self._compiled.get(key)
        if fn is None:
            check_scope(f, ctx)
            core = desugar(f)
            fn = self._compiled[key] = self._build(core, {v: i for i, v in enumerate(ctx)}, len(ctx))
        return fn

    def _build(self, f, pos, depth):
        alg = self.alg
        if isinstance(f, Bot):
            bottom = alg.bottom
            return lambda env: bottom
        if isinstance(f, (Mem, Eq)):
            i, j = pos[f.left], pos[f.right]
            rel = self.rel.mem if isinstance(f, Mem) else self.rel.eq
            return lambda env: rel(env[i], env[j])

        slots = tuple(sorted(pos[v] for v in free_vars(f)))
        memo = {}
        if isinstance(f, (And, Or, Implies)):
            left = self._build(f.left, pos, depth)
            right = self._build(f.right, pos, depth)
            table = {And: self.times, Or: self.plus, Implies: self.imp}[type(f)]

            def node(env):
                k = tuple(env[s] for s in slots)
                r = memo.get(k)
                if r is None:
                    r = memo[k] = table[left(env)][right(env)]
                return r
            return node

        inner = dict(pos)
        inner[f.var] = depth
        body = self._build(f.body, inner, depth + 1)
        names = self.names
        if isinstance(f, Exists):
            collapse = self.exists
        else:
            collapse = alg.meet_all

        def quant(env):
            k = tuple(env[s] for s in slots)
            r = memo.get(k)
            if r is None:
                r = memo[k] = collapse({body(env + (b,)) for b in names})
            return r
        return quant

    # -- entry points ----------------------------------------------------------------

    def value(self, f, ctx=(), args=()):
        ctx, args = tuple(ctx), tuple(args)
        if len(ctx) != len(args):
            raise ScopeError(f"{len(args)} arguments for a context of length {len(ctx)}")
        index = self.universe.index if isinstance(self.universe, Universe) else set(self.names)
        for a in args:
            if a not in index:
                raise ScopeError(f"argument {a!r} is not in the universe")
        return self.compile(f, ctx)(args)

    def family(self, f, ctx, domain=None):
        """Values of f at every argument tuple, in lexicographic order of ``domain``."""
        fn = self.compile(f, ctx)
        dom = self.names if domain is None else tuple(domain)
        return [fn(args) for args in product(dom, repeat=len(tuple(ctx)))]

    def meet_value(self, f, ctx=(), domain=None):
        return self.alg.meet_all(self.family(f, ctx, domain))

    def validates(self, f, ctx=(), domain=None):
        v = self.meet_value(f, ctx, domain)
        return v in self.alg.separator, v

    def split_outer(self, f):
        """Peel the leading block of universal quantifiers: (vars, body)."""
        out = []
        while isinstance(f, Forall):
            out.append(f.var)
            f = f.body
        return tuple(out), f

    def validates_over(self, f, params):
        """Validity of a closed formula whose leading universal block ranges
        over ``params`` while every other quantifier ranges over the universe."""
        ctx, body = self.split_outer(f)
        return self.validates(body, ctx, params)


def _as_formula(phi):
    return parse_formula(phi) if isinstance(phi, str) else phi


def evaluator(alg, U, variant="standard") -> Evaluator:
    """Shared evaluator per (algebra, universe, variant)."""
    store = alg.cache.setdefault("evaluators", {})
    key = (tuple(U), variant)
    ev = store.get(key)
    if ev is None:
        if variant == "standard":
            ev = Evaluator(alg, U)
        else:
            from .variants import make_evaluator
            ev = make_evaluator(alg, U, variant)
        store[key] = ev
    return ev


def interpret(phi, ctx, args, alg, U, variant="standard"):
    return evaluator(alg, U, variant).value(_as_formula(phi), ctx, args)


def validates(phi, alg, U, ctx=(), variant="standard"):
    """(verdict, value): meet of the interpretation over U^n, then membership in the separator."""
    return evaluator(alg, U, variant).validates(_as_formula(phi), ctx)

"""Realizers for the basic properties of equality and membership on names,
the substitutivity realizers r^phi built by induction on formulas, and the
bounded-quantifier and intuitionistic-logic sample checks.

Every bound is a meet over the finite universe U, so each verdict is
relative to U.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .formula import (
    And, Bot, BoundedExists, BoundedForall, Eq, Exists, Forall, Implies, Mem, Or,
    Subseteq, desugar, fresh_var, rename,
)
from .interpreter import RELATIVE, evaluator
from .lambda_engine import App, Const, Term, Var, apply, combinator, encode, lam, parse_term
from .logic_ops import entails_pointwise, iexists, times_table
from .manifest import load_samples
from .set_universe import relations

RHO_SRC = r"#y (\r. #p (\x. #e (#p x r)) (\x. #e (#p x r)))"
J_SRC = r"\x. #e (#p x 'rho)"
SIGMA_SRC = r"\x. #p (#p2 x) (#p1 x)"
# each s_k from the next one round the cycle s3 -> s2 -> s1 -> s3
S2_FROM_S3 = r"\s3. \x. (#p2 x) (\y. #e (#p (#p1 y) (s3 (#p (#p1 x) (#p2 y)))))"
S1_FROM_S2 = r"\s2. \x. (#p2 x) (\y. s2 (#p (#p2 y) ((#p1 (#p1 x)) (#p1 y))))"
S3_FROM_S1 = (r"\s1. \x. #p (\y. s1 (#p (#p1 x) (#p1 (#p2 x) y)))"
              r" (\y. s1 (#p ((" + SIGMA_SRC + r") (#p2 x)) (#p2 (#p1 x) y)))")
S3_STEP = r"\s. (" + S3_FROM_S1 + ") ((" + S1_FROM_S2 + ") ((" + S2_FROM_S3 + ") s))"
INDUCTION_SRC = r"#y (\h. \x. x (\y. h x))"


class BasicRealizers:
    """The elements rho, j, sigma, s1, s2, s3 of one algebra, with their terms."""

    def __init__(self, alg):
        self.alg = alg
        self.terms = {}
        self.terms["rho"] = parse_term(RHO_SRC)
        self.rho = encode(self.terms["rho"], {}, alg)
        self.terms["j"] = parse_term(J_SRC, {"rho": self.rho})
        self.terms["sigma"] = parse_term(SIGMA_SRC)
        s3 = App(combinator("y"), parse_term(S3_STEP))
        self.terms["s3"] = s3
        self.terms["s2"] = App(parse_term(S2_FROM_S3), s3)
        self.terms["s1"] = App(parse_term(S1_FROM_S2), self.terms["s2"])
        self.j = encode(self.terms["j"], {}, alg)
        self.sigma = encode(self.terms["sigma"], {}, alg)
        self.s3 = encode(s3, {}, alg)
        # s2 and s1 are the displayed bodies with the previous realizer plugged in
        self.s2 = encode(parse_term(S2_FROM_S3).body, {"s3": self.s3}, alg)
        self.s1 = encode(parse_term(S1_FROM_S2).body, {"s2": self.s2}, alg)

    def element(self, name):
        return getattr(self, name)

    def const(self, name):
        return Const(self.element(name))


def basic_realizers(alg) -> BasicRealizers:
    r = alg.cache.get("basic-realizers")
    if r is None:
        r = alg.cache["basic-realizers"] = BasicRealizers(alg)
    return r


# -- array helpers ----------------------------------------------------------------------------

class Tables:
    """numpy copies of the algebra tables and of mem / eq over a universe."""

    def __init__(self, alg, U):
        self.alg = alg
        self.names = tuple(U)
        rel = relations(alg)
        self.T = np.array(times_table(alg), dtype=np.int64)
        self.I = np.array(alg.imp, dtype=np.int64)
        self.E = np.array([[rel.eq(a, b) for b in self.names] for a in self.names], dtype=np.int64)
        self.M = np.array([[rel.mem(a, b) for b in self.names] for a in self.names], dtype=np.int64)

    def meet(self, arr):
        return self.alg.meet_all(int(v) for v in np.unique(arr))


def tables(alg, U) -> Tables:
    store = alg.cache.setdefault("tables", {})
    key = tuple(U)
    t = store.get(key)
    if t is None:
        t = store[key] = Tables(alg, U)
    return t


def basic_bounds(alg, U) -> dict:
    """The six target meets, each computed directly over U."""
    tb = tables(alg, U)
    T, I, E, M = tb.T, tb.I, tb.E, tb.M
    rel = relations(alg)
    imp = alg.imp
    j_vals = {imp[v][rel.mem(u, a)] for a in U for u, v in a.entries}
    return {
        "rho": tb.meet(np.diagonal(E)),
        "j": alg.meet_all(j_vals),
        "sigma": tb.meet(I[E, E.T]),
        # axes (alpha, beta, gamma)
        "s1": tb.meet(I[T[E[:, :, None], M.T[:, None, :]], M.T[None, :, :]]),
        "s2": tb.meet(I[T[E[:, :, None], M[:, None, :]], M[None, :, :]]),
        "s3": tb.meet(I[T[E[:, :, None], E.T[:, None, :]], E.T[None, :, :]]),
    }


# -- substitutivity realizers ------------------------------------------------------------------

def _p(a, b):
    return apply(combinator("p"), a, b)


def _p1(t):
    return App(combinator("p1"), t)


def _p2(t):
    return App(combinator("p2"), t)


def _component(t, k, n):
    """Component k (1-based) of a left-nested pair of n equalities."""
    if n == 1:
        return t
    for _ in range(n - k):
        t = _p1(t)
    return t if k == 1 else _p2(t)


def _swap_all(t, n, sigma):
    if n == 1:
        return App(sigma, t)
    return _p(_swap_all(_p1(t), n - 1, sigma), App(sigma, _p2(t)))


def _extend(t, n, new):
    return new if n == 0 else _p(t, new)


def subfor_term(phi, ctx, alg) -> Term:
    """A closed term r with r <= (a = b) x phi(a) -> phi(b), by induction on phi."""
    br = basic_realizers(alg)
    return _subfor(desugar(phi), tuple(ctx), br)


def _subfor(f, ctx, br):
    n = len(ctx)
    x, z, u, v = Var("x"), Var("z"), Var("u"), Var("v")
    rho, sigma = br.const("rho"), br.const("sigma")
    if isinstance(f, Bot):
        return lam("x", _p2(x))
    if isinstance(f, (Mem, Eq)):
        ei = _component(_p1(x), ctx.index(f.left) + 1, n)
        ej = _component(_p1(x), ctx.index(f.right) + 1, n)
        if isinstance(f, Mem):
            inner = App(br.const("s2"), _p(ei, _p2(x)))
            return lam("x", App(br.const("s1"), _p(ej, inner)))
        inner = App(br.const("s3"), _p(_p2(x), App(sigma, ei)))
        return lam("x", App(br.const("s3"), _p(ej, inner)))
    if isinstance(f, And):
        rl, rr = _subfor(f.left, ctx, br), _subfor(f.right, ctx, br)
        return lam("x", _p(App(rl, _p(_p1(x), _p1(_p2(x)))), App(rr, _p(_p1(x), _p2(_p2(x))))))
    if isinstance(f, Or):
        rl, rr = _subfor(f.left, ctx, br), _subfor(f.right, ctx, br)
        left = lam("u", App(combinator("j1"), App(rl, _p(_p1(x), u))))
        right = lam("v", App(combinator("j2"), App(rr, _p(_p1(x), v))))
        return lam("x", apply(_p2(x), left, right))
    if isinstance(f, Implies):
        rl, rr = _subfor(f.left, ctx, br), _subfor(f.right, ctx, br)
        back = App(rl, _p(_swap_all(_p1(x), n, sigma), z))
        return lam("x z", App(rr, _p(_p1(x), App(_p2(x), back))))
    if isinstance(f, (Exists, Forall)):
        var, body = f.var, f.body
        if var in ctx:
            new = fresh_var(set(ctx) | {var})
            body, var = rename(body, var, new), new
        rb = _subfor(body, ctx + (var,), br)
        ext = _extend(_p1(x), n, rho)
        if isinstance(f, Forall):
            return lam("x", App(rb, _p(ext, _p2(x))))
        return lam("x", App(_p2(x), lam("z", App(combinator("e"), App(rb, _p(ext, z))))))
    raise TypeError(f"unexpected node {f!r}")


def subfor_bound(phi, ctx, alg, U):
    """meet over a, b in U^n of (a = b) x phi(a) -> phi(b), tuple equality nested to the left."""
    ctx = tuple(ctx)
    n = len(ctx)
    tb = tables(alg, U)
    N = len(tb.names)
    F = np.array(evaluator(alg, U).family(phi, ctx), dtype=np.int64).reshape((N,) * n)

    def spread(mat, k):
        shape = [1] * (2 * n)
        shape[k] = shape[n + k] = N
        full = np.empty(shape, dtype=np.int64)
        idx = [0] * (2 * n)
        idx[k] = slice(None)
        idx[n + k] = slice(None)
        full[tuple(idx)] = mat
        return full

    acc = spread(tb.E, 0)
    for k in range(1, n):
        acc = tb.T[acc, spread(tb.E, k)]
    fa = F.reshape(F.shape + (1,) * n)
    fb = F.reshape((1,) * n + F.shape)
    return tb.meet(tb.I[tb.T[acc, fa], fb])


# -- reports ------------------------------------------------------------------------------------

@dataclass
class RealizerCheck:
    name: str
    element: int
    bound: int
    in_sigma: bool
    below_bound: bool

    @property
    def holds(self):
        return self.in_sigma and self.below_bound

    def as_dict(self, alg):
        return {"name": self.name, "element": alg.label(self.element),
                "bound": alg.label(self.bound), "in_sigma": self.in_sigma,
                "below_bound": self.below_bound, "holds": self.holds}


@dataclass
class RealizerReport:
    algebra: str
    universe: dict
    basic: list
    subfor: list
    scope: str = RELATIVE
    alg: object = field(default=None, repr=False)

    @property
    def holds(self):
        return all(c.holds for c in self.basic) and all(c.holds for c in self.subfor)

    def as_dict(self):
        return {
            "algebra": self.algebra,
            "scope": self.scope,
            "universe": self.universe,
            "holds": self.holds,
            "basic": [c.as_dict(self.alg) for c in self.basic],
            "subfor": [c.as_dict(self.alg) for c in self.subfor],
        }

    def render(self):
        lines = [f"realizers over {self.algebra}, |U| = {self.universe['size']} ({self.scope})"]
        for c in self.basic + self.subfor:
            mark = "ok  " if c.holds else "FAIL"
            lines.append(f"  {mark} {c.name}: element {self.alg.label(c.element)}, "
                         f"bound {self.alg.label(c.bound)}, in separator {c.in_sigma}, "
                         f"below bound {c.below_bound}")
        return "\n".join(lines)


def realizer_suite(alg, U, samples=None) -> RealizerReport:
    br = basic_realizers(alg)
    bounds = basic_bounds(alg, U)
    basic = []
    for name in ("rho", "j", "sigma", "s1", "s2", "s3"):
        el = br.element(name)
        basic.append(RealizerCheck(name, el, bounds[name], alg.in_sigma(el),
                                   alg.leq(el, bounds[name])))
    samples = samples if samples is not None else load_samples()["subfor"]
    sub = []
    for phi, ctx in samples:
        r = encode(subfor_term(phi, ctx, alg), {}, alg)
        b = subfor_bound(phi, ctx, alg, U)
        sub.append(RealizerCheck(f"subst[{phi} | {','.join(ctx)}]", r, b,
                                 alg.in_sigma(r), alg.leq(r, b)))
    return RealizerReport(alg.name, U.stats(), basic, sub, alg=alg)


# -- bounded quantifiers and sample sequents ----------------------------------------------------

def bounded_equiv_check(phi, ctx, alg, U) -> dict:
    """Compare bounded quantifiers over the last context variable with their
    domain-indexed forms, as predicate families over U^(n+1)."""
    ctx = tuple(ctx)
    *params, y, z = ctx
    outer = tuple(params) + (y,)
    ev = evaluator(alg, U)
    body = ev.compile(phi, ctx)
    imp, t = alg.imp, times_table(alg)
    out = {}
    for kind, node in (("exists", BoundedExists(z, y, phi)), ("forall", BoundedForall(z, y, phi))):
        lhs = ev.family(node, outer)
        rhs = []
        for args in product(U.names, repeat=len(outer)):
            beta = args[-1]
            if kind == "exists":
                rhs.append(iexists(alg, {t[v][body(args + (u,))] for u, v in beta.entries}))
            else:
                rhs.append(alg.meet_all(imp[v][body(args + (u,))] for u, v in beta.entries))
        out[kind] = (entails_pointwise(alg, lhs, rhs), entails_pointwise(alg, rhs, lhs))
    return out


def subset_equiv_check(alg, U):
    """x sub y against the direct subset relation, both directions."""
    rel = relations(alg)
    lhs = evaluator(alg, U).family(Subseteq("x", "y"), ("x", "y"))
    rhs = [rel.subset(a, b) for a, b in product(U.names, repeat=2)]
    return entails_pointwise(alg, lhs, rhs), entails_pointwise(alg, rhs, lhs)


def intlog_check(alg, U, samples=None) -> list:
    """(lhs, rhs, ctx, verdict) for each sample sequent."""
    samples = samples if samples is not None else load_samples()["intlog"]
    ev = evaluator(alg, U)
    out = []
    for lhs, rhs, ctx in samples:
        ok = entails_pointwise(alg, ev.family(lhs, ctx), ev.family(rhs, ctx))
        out.append((str(lhs), str(rhs), ctx, ok))
    return out

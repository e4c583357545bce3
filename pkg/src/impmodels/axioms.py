"""The set-theory axioms, checked one by one over a finite universe.

Each check extends the base universe U0 with the witness names the
realizer argument needs, evaluates the axiom with its leading universal
block ranging over U0 and every other quantifier over the extension, and
independently evaluates the realizer inequalities.  Infinity cannot be
decided on a finite universe; only its finite components are checked.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product

from .errors import BudgetExceeded
from .formula import (
    And, BoundedExists, BoundedForall, Exists, Forall, Implies, Mem,
    all_vars, forall_all, fresh_var, parse_formula, rename,
)
from .interpreter import RELATIVE, Evaluator
from .lambda_engine import App, Const, apply, combinator, encode, infinity_term, numeral, parse_term, reduces_to
from .logic_ops import iexists, plus_table, times_table
from .manifest import load_samples
from .realizers import INDUCTION_SRC, basic_realizers
from .set_universe import (
    DEFAULT_POWER_CAP, collect_name, nat_name, omega_name, pair_name, power_name,
    relations, sep_name, union_name,
)

DEFAULT_WITNESS_BUDGET = 20_000
INFINITY_TRUNCATION = 4
NOT_FINITE = "not decidable at finite scale"

EXT = parse_formula("forall x. forall y. x sub y & y sub x -> x = y")
PAIR = parse_formula("forall x. forall y. exists z. x in z & y in z")
UNION = parse_formula("forall x. exists u. forall y in x. forall z in y. z in u")
POW = parse_formula("forall x. exists z. forall y. y sub x -> y in z")
INF1 = parse_formula("exists x in u. forall y in x. bot")


def sep_formula(phi, ctx):
    """forall w.. forall x. exists y. (forall z in y. z in x & phi) & (forall z in x. phi -> z in y)."""
    *ws, x, z = ctx
    y = fresh_var(all_vars(phi) | set(ctx), "y")
    body = Exists(y, And(BoundedForall(z, y, And(Mem(z, x), phi)),
                         BoundedForall(z, x, Implies(phi, Mem(z, y)))))
    return forall_all(tuple(ws) + (x,), body)


def induction_formula(phi, ctx):
    """forall w.. ((forall x. (forall y in x. phi[y/x]) -> phi) -> forall x. phi)."""
    *ws, x = ctx
    y = fresh_var(all_vars(phi) | set(ctx), "y")
    step = Forall(x, Implies(BoundedForall(y, x, rename(phi, x, y)), phi))
    return forall_all(tuple(ws), Implies(step, Forall(x, phi)))


def collection_formula(phi, ctx):
    """forall w.. forall y. (forall x in y. exists z. phi) -> exists u. forall x in y. exists z in u. phi."""
    *ws, x, y, z = ctx
    u = fresh_var(all_vars(phi) | set(ctx), "u")
    hyp = BoundedForall(x, y, Exists(z, phi))
    concl = Exists(u, BoundedForall(x, y, BoundedExists(z, u, phi)))
    return forall_all(tuple(ws) + (y,), Implies(hyp, concl))


# -- report types ----------------------------------------------------------------------------------

@dataclass
class Inequality:
    name: str
    realizer: int
    bound: int
    in_sigma: bool
    holds: bool

    def as_dict(self, alg):
        return {"name": self.name, "realizer": alg.label(self.realizer),
                "bound": alg.label(self.bound), "in_sigma": self.in_sigma, "holds": self.holds}


@dataclass
class AxiomResult:
    axiom: str
    formula: str
    value: int | None
    in_sigma: bool | None
    inequalities: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    universe_size: int = 0
    status: str = ""

    @property
    def passed(self):
        if self.in_sigma is False:
            return False
        return all(i.in_sigma and i.holds for i in self.inequalities) and all(self.checks.values())

    def as_dict(self, alg):
        return {
            "axiom": self.axiom,
            "formula": self.formula,
            "value": None if self.value is None else alg.label(self.value),
            "in_sigma": self.in_sigma,
            "status": self.status,
            "passed": self.passed,
            "inequalities": [i.as_dict(alg) for i in self.inequalities],
            "checks": dict(sorted(self.checks.items())),
            "witnesses": self.witnesses,
            "universe_size": self.universe_size,
        }


@dataclass
class AxiomReport:
    algebra: str
    universe: dict
    results: list
    scope: str = RELATIVE
    alg: object = field(default=None, repr=False)

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def by_axiom(self, name):
        return [r for r in self.results if r.axiom == name]

    def as_dict(self):
        return {
            "algebra": self.algebra,
            "scope": self.scope,
            "universe": self.universe,
            "passed": self.passed,
            "axioms": [r.as_dict(self.alg) for r in self.results],
        }

    def render(self):
        alg = self.alg
        lines = [f"axioms over {self.algebra}, |U0| = {self.universe['size']} ({self.scope})"]
        for r in self.results:
            mark = "ok  " if r.passed else "FAIL"
            val = "-" if r.value is None else alg.label(r.value)
            lines.append(f"  {mark} {r.axiom}: {r.status}; value {val}; |U| = {r.universe_size}"
                         + (f"; formula {r.formula}" if r.formula else ""))
            for i in r.inequalities:
                lines.append(f"       {'ok' if i.holds and i.in_sigma else 'FAIL'} realizer {i.name}: "
                             f"{alg.label(i.realizer)} <= {alg.label(i.bound)}")
            for k, v in sorted(r.checks.items()):
                lines.append(f"       {'ok' if v else 'FAIL'} {k}")
        return "\n".join(lines)


# -- the suite -----------------------------------------------------------------------------------

class AxiomChecker:
    def __init__(self, alg, U, samples=None, budget=DEFAULT_WITNESS_BUDGET,
                 power_cap=DEFAULT_POWER_CAP, infinity_n=INFINITY_TRUNCATION):
        self.alg = alg
        self.U0 = U
        self.base = tuple(U)
        self.samples = samples or load_samples()
        self.budget = budget
        self.power_cap = power_cap
        self.infinity_n = infinity_n
        self.rel = relations(alg)
        self.times = times_table(alg)
        self.imp = alg.imp
        self.br = basic_realizers(alg)

    # helpers
    def extend(self, U, extra, note):
        extra = [a for a in extra if a not in U]
        if not extra:
            return U
        V = U.extended(extra, note)
        if len(V) > self.budget:
            raise BudgetExceeded(f"{note}: universe would grow to {len(V)} names (budget {self.budget})")
        return V

    def term(self, src, **params):
        named = {"rho": self.br.rho, "j": self.br.j, "sigma": self.br.sigma,
                 "s1": self.br.s1, "s2": self.br.s2, "s3": self.br.s3, "top": self.alg.top}
        named.update(params)
        return encode(parse_term(src, named), {}, self.alg)

    def inequality(self, name, realizer, bound):
        a = self.alg
        return Inequality(name, realizer, bound, a.in_sigma(realizer), a.leq(realizer, bound))

    def evaluate(self, name, formula, U, witnesses):
        ev = Evaluator(self.alg, U)
        ok, value = ev.validates_over(formula, self.base)
        return AxiomResult(name, str(formula), value, ok, witnesses=witnesses,
                           universe_size=len(U), status="valid" if ok else "invalid"), ev

    # axioms
    def ext(self):
        res, _ = self.evaluate("Ext", EXT, self.U0, {})
        rel, imp = self.rel, self.imp
        bound = self.alg.meet_all(
            imp[self.times[rel.subset(a, b)][rel.subset(b, a)]][rel.eq(a, b)]
            for a in self.base for b in self.base)
        res.inequalities.append(self.inequality(r"\x. x", self.term(r"\x. x"), bound))
        return res

    def pair(self):
        extra = [pair_name(a, b, self.alg) for a, b in combinations_with_replacement(self.base, 2)]
        U = self.extend(self.U0, extra, "pair witnesses")
        res, _ = self.evaluate("Pair", PAIR, U, {"pair": len(set(extra))})
        rel, t = self.rel, self.times
        bound = self.alg.meet_all(
            iexists(self.alg, {t[rel.mem(a, g)][rel.mem(b, g)] for g in U})
            for a in self.base for b in self.base)
        q = r"(#e (#p 'top 'rho))"
        res.inequalities.append(self.inequality("e q'", self.term(f"#e (#p {q} {q})"), bound))
        return res

    def union(self):
        extra = [union_name(a, self.alg) for a in self.base]
        U = self.extend(self.U0, extra, "union witnesses")
        res, _ = self.evaluate("Union", UNION, U, {"union": len(set(extra))})
        rel, imp, meet_all = self.rel, self.imp, self.alg.meet_all

        def inner(a, b):
            return meet_all(imp[v][meet_all(imp[x][rel.mem(w, b)] for w, x in u.entries)]
                            for u, v in a.entries)
        bound = meet_all(iexists(self.alg, {inner(a, b) for b in U}) for a in self.base)
        r = self.term(r"#e (\v' v. #e (#p 'top 'rho))")
        res.inequalities.append(self.inequality("e (\\v' v. e (p T rho))", r, bound))
        return res

    def power(self):
        extra = {}
        for a in self.base:
            pa = power_name(a, self.alg, cap=self.power_cap)
            extra.setdefault(pa, a)
        U = self.extend(self.U0, list(extra), "power witnesses")
        added = sorted(a.key for a in extra if a not in self.U0)
        res, _ = self.evaluate("Pow", POW, U, {"power": len(extra), "added": added})
        rel, imp = self.rel, self.imp
        bound = self.alg.meet_all(
            iexists(self.alg, {self.alg.meet_all(imp[rel.subset(g, a)][rel.mem(g, b)] for g in U)
                               for b in U})
            for a in self.base)
        rt = r"#e (#p (#p ('j (#p1 z)) ('s2 (#p ('sigma (#p2 z)) ('j y)))) (#p2 z))"
        rbar = rf"#p 'top (#p (\z. #p2 z) (\y. x y (\z. {rt})))"
        r = self.term(rf"#e (\x. #e ({rbar}))")
        res.inequalities.append(self.inequality("e (\\x. e rbar)", r, bound))
        return res

    def separation(self, phi, ctx):
        formula = sep_formula(phi, ctx)
        *ws, _x, _z = ctx
        U = self.U0
        rounds = 0
        while True:
            fn = Evaluator(self.alg, U).compile(phi, ctx)
            needed = {}
            for params in product(self.base, repeat=len(ws)):
                for a in self.base:
                    vals = {u: fn(params + (a, u)) for u in a.domain}
                    needed[(params, a)] = (sep_name(a, vals, self.alg), vals)
            missing = [w for w, _ in needed.values() if w not in U]
            if not missing:
                break
            rounds += 1
            U = self.extend(U, missing, f"separation witnesses for {phi}")
        witnesses = {"separation": len({w for w, _ in needed.values()}), "rounds": rounds}
        res, _ = self.evaluate("Sep", formula, U, witnesses)
        rel, imp, t = self.rel, self.imp, self.times
        b1, b2 = [], []
        for (params, a), (w, vals) in needed.items():
            for u, v in a.entries:
                b1.append(imp[w(u)][t[rel.mem(u, a)][vals[u]]])
                b2.append(imp[v][imp[vals[u]][rel.mem(u, w)]])
        meet_all = self.alg.meet_all
        res.inequalities.append(self.inequality(
            "\\x. p (j (p1 x)) (p2 x)", self.term(r"\x. #p ('j (#p1 x)) (#p2 x)"), meet_all(b1)))
        res.inequalities.append(self.inequality(
            "\\x y. e (p (p x y) rho)", self.term(r"\x y. #e (#p (#p x y) 'rho)"), meet_all(b2)))
        return res

    def induction(self, phi, ctx):
        formula = induction_formula(phi, ctx)
        res, ev = self.evaluate("Ind", formula, self.U0, {})
        fn = ev.compile(phi, ctx)
        *ws, _x = ctx
        imp, meet_all = self.imp, self.alg.meet_all
        h = self.term(INDUCTION_SRC)
        by_rank = {}
        for params in product(self.base, repeat=len(ws)):
            phi_at = {a: fn(params + (a,)) for a in self.base}
            eps = meet_all(imp[meet_all(imp[v][phi_at[u]] for u, v in a.entries)][phi_at[a]]
                           for a in self.base)
            for a in self.base:
                by_rank.setdefault(a.rank, []).append(imp[eps][phi_at[a]])
        for rank in sorted(by_rank):
            b = meet_all(by_rank[rank])
            res.checks[f"h bound at rank {rank}"] = self.alg.leq(h, b)
        bound = meet_all(v for vals in by_rank.values() for v in vals)
        res.inequalities.append(self.inequality("h = y (\\h x. x (\\y. h x))", h, bound))
        unfolded = encode(parse_term(r"\x. x (\y. 'h x)", {"h": h}), {}, self.alg)
        res.checks["h below its unfolding"] = self.alg.leq(h, unfolded)
        return res

    def collection(self, phi, ctx):
        formula = collection_formula(phi, ctx)
        beta = collect_name(self.base, self.alg)
        U = self.extend(self.U0, [beta], "collection witness")
        res, ev = self.evaluate("Col", formula, U, {"collection": 1, "domain": len(self.base)})
        fn = ev.compile(phi, ctx)
        *ws, _x, _y, _z = ctx
        imp, t, meet_all, alg = self.imp, self.times, self.alg.meet_all, self.alg
        vals = []
        for params in product(self.base, repeat=len(ws)):
            for a in self.base:
                hyp = meet_all(imp[v][iexists(alg, {fn(params + (u, a, g)) for g in U})]
                               for u, v in a.entries)
                concl = meet_all(imp[v][iexists(alg, {t[bv][fn(params + (u, a, w))]
                                                      for w, bv in beta.entries})]
                                 for u, v in a.entries)
                vals.append(imp[hyp][concl])
        res.checks["bounded collection form in separator"] = alg.in_sigma(meet_all(vals))
        return res

    def infinity(self):
        alg, N = self.alg, self.infinity_n
        rel = self.rel
        omega = omega_name(N, alg)
        nats = [nat_name(n, alg) for n in range(N)]
        U = self.extend(self.U0, [omega], f"omega truncated at {N}")
        res = AxiomResult("Inf", "", None, None, witnesses={"omega": N},
                          universe_size=len(U), status=f"component checks only; full axiom {NOT_FINITE}")
        ev = Evaluator(alg, U)
        v = ev.value(INF1, ("u",), (omega,))
        res.checks[f"Inf1 at omega_{N} in separator"] = alg.in_sigma(v)
        imp, t = alg.imp, self.times
        num = [encode(numeral(n), {}, alg) for n in range(N)]
        reduced = iexists(alg, {t[omega(nats[n])][alg.meet_all(imp[nats[n](nats[m])][alg.bottom]
                                                                for m in range(n))]
                                for n in range(N)})
        res.inequalities.append(self.inequality(
            "e (p 0 T)", self.term(r"#e (#p #0 'top)"), reduced))
        sub_r = self.term(r"\x. #e (#p x 'rho)")
        plus = plus_table(alg)
        f = infinity_term(Const(self.br.rho))
        f_el = encode(f, {}, alg)
        res.checks["f in separator"] = alg.in_sigma(f_el)
        for n in range(N - 1):
            res.inequalities.append(self.inequality(
                f"{n} sub {n + 1}", sub_r, rel.subset(nats[n], nats[n + 1])))
            res.inequalities.append(self.inequality(
                f"{n} in {n + 1}", self.term(rf"#e (#p #{n} 'rho)"), rel.mem(nats[n], nats[n + 1])))
            case = alg.meet_all(
                imp[num[i]][plus[rel.mem(nats[i], nats[n])][rel.eq(nats[i], nats[n])]]
                for i in range(n + 1))
            res.inequalities.append(self.inequality(
                f"\\u. f {n} u case split", encode(parse_term(rf"\u. 'f #{n} u", {"f": f_el}), {}, alg),
                case))
        rho = Const(self.br.rho)
        table_ok = True
        for n in range(N):
            for m in range(N):
                if n == m:
                    target = App(combinator("j2"), rho)
                else:
                    target = App(combinator("j1"), App(combinator("e"), apply(combinator("p"), numeral(m), rho)))
                table_ok &= reduces_to(apply(f, numeral(n), numeral(m)), target) is not None
        res.checks[f"f reduction table n, m < {N}"] = table_ok
        return res


def axiom_suite(alg, U, samples=None, budget=DEFAULT_WITNESS_BUDGET,
                power_cap=DEFAULT_POWER_CAP, infinity_n=INFINITY_TRUNCATION) -> AxiomReport:
    c = AxiomChecker(alg, U, samples, budget, power_cap, infinity_n)
    results = [c.ext(), c.pair(), c.union(), c.power()]
    results += [c.separation(phi, ctx) for phi, ctx in c.samples["sep"]]
    results += [c.induction(phi, ctx) for phi, ctx in c.samples["ind"]]
    results += [c.collection(phi, ctx) for phi, ctx in c.samples["col"]]
    results.append(c.infinity())
    return AxiomReport(alg.name, U.stats(), results, alg=alg)

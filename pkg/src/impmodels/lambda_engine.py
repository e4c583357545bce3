"""Lambda terms with algebra constants: substitution, reduction, encoding.

Concrete syntax (``parse_term``)::

    \\x y. t        abstraction (several binders allowed)
    t u v          application, left associative
    #name          library combinator (#k, #s, #p1, #y, #3 for numerals ...)
    'label         algebra element (or a caller-supplied parameter)
"""
from __future__ import annotations

import re
import sys
from itertools import count

from .errors import (
    ReductionBudgetExceeded,
    TermSyntaxError,
    UnboundVariable,
    UnknownCombinator,
)

DEFAULT_BUDGET = 10_000


class Term:
    __slots__ = ("_hash", "fv", "_fv_sorted")

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other) or self._hash != other._hash:
            return False
        return self._fields() == other._fields()

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"<{print_term(self)}>"

    def __str__(self):
        return print_term(self)


class Var(Term):
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name
        self.fv = frozenset((name,))
        self._fv_sorted = (name,)
        self._hash = hash(("V", name))

    def _fields(self):
        return (self.name,)


class Const(Term):
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value
        self.fv = frozenset()
        self._fv_sorted = ()
        self._hash = hash(("C", value))

    def _fields(self):
        return (self.value,)


class App(Term):
    __slots__ = ("fun", "arg")

    def __init__(self, fun, arg):
        self.fun = fun
        self.arg = arg
        self.fv = fun.fv | arg.fv
        self._fv_sorted = tuple(sorted(self.fv))
        self._hash = hash(("A", fun._hash, arg._hash))

    def _fields(self):
        return (self.fun, self.arg)


class Abs(Term):
    __slots__ = ("var", "body")

    def __init__(self, var, body):
        self.var = var
        self.body = body
        self.fv = body.fv - {var}
        self._fv_sorted = tuple(sorted(self.fv))
        self._hash = hash(("L", var, body._hash))

    def _fields(self):
        return (self.var, self.body)


def apply(*terms):
    t = terms[0]
    for u in terms[1:]:
        t = App(t, u)
    return t


def lam(names, body):
    for x in reversed(names.split() if isinstance(names, str) else names):
        body = Abs(x, body)
    return body


def term_size(t):
    if isinstance(t, App):
        return 1 + term_size(t.fun) + term_size(t.arg)
    if isinstance(t, Abs):
        return 1 + term_size(t.body)
    return 1


def is_pure(t):
    if isinstance(t, Const):
        return False
    if isinstance(t, App):
        return is_pure(t.fun) and is_pure(t.arg)
    if isinstance(t, Abs):
        return is_pure(t.body)
    return True


# -- substitution and reduction ---------------------------------------------------

def _fresh_name(base, avoid):
    base = base.rstrip("0123456789'") or "v"
    for i in count():
        cand = f"{base}{i}"
        if cand not in avoid:
            return cand


def substitute(t: Term, x: str, s: Term) -> Term:
    """Capture-avoiding t[s/x]."""
    if x not in t.fv:
        return t
    if isinstance(t, Var):
        return s
    if isinstance(t, App):
        return App(substitute(t.fun, x, s), substitute(t.arg, x, s))
    # Abs, with x free in the body so t.var != x
    y, body = t.var, t.body
    if y in s.fv:
        z = _fresh_name(y, s.fv | body.fv | {x})
        body = substitute(body, y, Var(z))
        y = z
    return Abs(y, substitute(body, x, s))


def beta_step(t: Term):
    """One leftmost-outermost contraction, or None when t is normal."""
    if isinstance(t, App):
        if isinstance(t.fun, Abs):
            return substitute(t.fun.body, t.fun.var, t.arg)
        r = beta_step(t.fun)
        if r is not None:
            return App(r, t.arg)
        r = beta_step(t.arg)
        if r is not None:
            return App(t.fun, r)
        return None
    if isinstance(t, Abs):
        r = beta_step(t.body)
        return None if r is None else Abs(t.var, r)
    return None


def normalize(t: Term, budget=DEFAULT_BUDGET) -> Term:
    for _ in range(budget):
        r = beta_step(t)
        if r is None:
            return t
        t = r
    raise ReductionBudgetExceeded(f"no normal form within {budget} steps")


def reduction_path(t: Term, budget=DEFAULT_BUDGET):
    """Yield t and its successive leftmost-outermost reducts."""
    yield t
    for _ in range(budget):
        t = beta_step(t)
        if t is None:
            return
        yield t
    raise ReductionBudgetExceeded(f"reduction still running after {budget} steps")


def reduces_to(t: Term, target: Term, budget=DEFAULT_BUDGET):
    """Number of leftmost-outermost steps until t is alpha-equal to target.

    Returns None if t reaches a normal form without meeting target.
    """
    goal = debruijn(target)
    for i, u in enumerate(reduction_path(t, budget)):
        if debruijn(u) == goal:
            return i
    return None


def debruijn(t: Term, bound=()):
    if isinstance(t, Var):
        for i, name in enumerate(reversed(bound)):
            if name == t.name:
                return ("b", i)
        return ("f", t.name)
    if isinstance(t, Const):
        return ("c", t.value)
    if isinstance(t, App):
        return ("a", debruijn(t.fun, bound), debruijn(t.arg, bound))
    return ("l", debruijn(t.body, bound + (t.var,)))


def alpha_equal(t: Term, s: Term) -> bool:
    return debruijn(t) == debruijn(s)


# -- encoding into an algebra ---------------------------------------------------------

class _Encoder:
    def __init__(self, alg):
        self.alg = alg
        self.memo = {}
        self.app = alg.app_table
        self.imp = alg.imp
        self.meet = alg.lattice.meet_table
        self.top = alg.top
        self.elems = range(alg.n)

    def run(self, t, env):
        if isinstance(t, Const):
            return t.value
        if isinstance(t, Var):
            try:
                return env[t.name]
            except KeyError:
                raise UnboundVariable(t.name) from None
        key = (t, tuple(env[v] if v in env else None for v in t._fv_sorted))
        r = self.memo.get(key)
        if r is not None:
            return r
        if isinstance(t, App):
            r = self.app[self.run(t.fun, env)][self.run(t.arg, env)]
        else:
            for v in t._fv_sorted:
                if v not in env:
                    raise UnboundVariable(v)
            imp, meet = self.imp, self.meet
            x, body = t.var, t.body
            env2 = dict(env)
            acc = self.top
            for a in self.elems:
                env2[x] = a
                acc = meet[acc][imp[a][self.run(body, env2)]]
            r = acc
        self.memo[key] = r
        return r


def _encoder(alg):
    enc = alg.cache.get("encoder")
    if enc is None:
        enc = alg.cache["encoder"] = _Encoder(alg)
    return enc


def encode(t: Term, env=None, alg=None):
    """The element t^A, with free variables read from ``env``."""
    if alg is None:
        raise TypeError("encode needs an algebra")
    limit = sys.getrecursionlimit()
    if limit < 20_000:
        sys.setrecursionlimit(20_000)
    return _encoder(alg).run(t, env or {})


# -- concrete syntax --------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<lam>[\\λ])|(?P<dot>\.)|(?P<lp>\()|(?P<rp>\))"
    r"|(?P<comb>#[A-Za-z0-9_]+)|(?P<const>'(?:\{[^}]*\}|[^\s()]+))"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_']*))"
)


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise TermSyntaxError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return out


class _TermParser:
    def __init__(self, text, params, algebra):
        self.toks = _tokenize(text)
        self.i = 0
        self.params = params or {}
        self.algebra = algebra

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind):
        if self.peek() != kind:
            where = self.toks[self.i][2] if self.i < len(self.toks) else "end"
            raise TermSyntaxError(f"expected {kind} at {where}")
        tok = self.toks[self.i]
        self.i += 1
        return tok[1]

    def term(self):
        if self.peek() == "lam":
            self.take("lam")
            names = [self.take("ident")]
            while self.peek() == "ident":
                names.append(self.take("ident"))
            self.take("dot")
            return lam(names, self.term())
        t = self.atom()
        while self.peek() in ("ident", "comb", "const", "lp", "lam"):
            if self.peek() == "lam":
                t = App(t, self.term())
                break
            t = App(t, self.atom())
        return t

    def atom(self):
        kind = self.peek()
        if kind == "ident":
            return Var(self.take("ident"))
        if kind == "comb":
            return combinator(self.take("comb")[1:])
        if kind == "const":
            label = self.take("const")[1:]
            if label in self.params:
                return Const(self.params[label])
            if self.algebra is None:
                raise TermSyntaxError(f"constant '{label} needs an algebra or a parameter")
            try:
                return Const(self.algebra.index(label))
            except KeyError:
                raise TermSyntaxError(f"unknown element '{label}") from None
        if kind == "lp":
            self.take("lp")
            t = self.term()
            self.take("rp")
            return t
        raise TermSyntaxError(f"unexpected {kind or 'end of input'}")


def parse_term(text, params=None, algebra=None) -> Term:
    p = _TermParser(text, params, algebra)
    t = p.term()
    if p.i != len(p.toks):
        raise TermSyntaxError(f"trailing input at {p.toks[p.i][2]}")
    return t


def print_term(t: Term, labels=None) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return "'" + (labels[t.value] if labels else str(t.value))
    if isinstance(t, Abs):
        names = [t.var]
        body = t.body
        while isinstance(body, Abs):
            names.append(body.var)
            body = body.body
        return "\\" + " ".join(names) + ". " + print_term(body, labels)
    f = print_term(t.fun, labels)
    if isinstance(t.fun, Abs):
        f = f"({f})"
    a = print_term(t.arg, labels)
    if isinstance(t.arg, (App, Abs)):
        a = f"({a})"
    return f"{f} {a}"


# -- combinator library -------------------------------------------------------------------

_LIBRARY_SRC = {
    "i": r"\x. x",
    "k": r"\x y. x",
    "kbar": r"\x y. y",
    "s": r"\x y z. x z (y z)",
    "p": r"\x y z. z x y",
    "p1": r"\u. u #k",
    "p2": r"\v. v #kbar",
    "j1": r"\x z w. z x",
    "j2": r"\x z w. w x",
    "e": r"\x z. z x",
    # Turing's fixpoint: y f reduces to f (y f) in two steps
    "y": r"(\x y. y (x x y)) (\x y. y (x x y))",
    "succ": r"\z x y. y (z x y)",
    "true": r"\t f. t",
    "false": r"\t f. f",
    "iszero": r"\n. n #true (\q. #false)",
    "pred": r"\n. #p1 (n (#p #0 #0) (\q. #p (#p2 q) (#succ (#p2 q))))",
    "sub": r"\m n. n m #pred",
    "leq": r"\m n. #iszero (#sub m n)",
    "and": r"\a b. a b #false",
    "eqnat": r"\m n. #and (#leq m n) (#leq n m)",
    # Infinity case split, rho abstracted as first argument
    "f": r"\r n m. #eqnat n m (#j2 r) (#j1 (#e (#p m r)))",
}

_LIBRARY = {}

PURE_LIBRARY = tuple(_LIBRARY_SRC)


def numeral(n: int) -> Term:
    """Normal form of succ^n 0 with 0 = \\x y. x, i.e. \\x y. y (... (y x))."""
    body = Var("x")
    for _ in range(n):
        body = App(Var("y"), body)
    return lam("x y", body)


def combinator(name: str) -> Term:
    if name.isdigit():
        return numeral(int(name))
    t = _LIBRARY.get(name)
    if t is None:
        src = _LIBRARY_SRC.get(name)
        if src is None:
            raise UnknownCombinator(name)
        t = _LIBRARY[name] = parse_term(src)
    return t


def infinity_term(rho: Term) -> Term:
    """The case-split term with rho filled in (usually a Const)."""
    return normalize_head(App(combinator("f"), rho))


def normalize_head(t: Term) -> Term:
    # contract only the outer redex so the result keeps its readable shape
    if isinstance(t, App) and isinstance(t.fun, Abs):
        return substitute(t.fun.body, t.fun.var, t.arg)
    return t

"""First-order set-theory formulas: AST, parser, printer, desugaring.

ASCII grammar, loosest to tightest::

    p -> q          right associative
    p | q, p & q    left associative
    ~p              sugar for p -> bot
    forall x. p     also exists, and bounded forms ``forall x in y. p``;
                    the body extends as far right as possible
    x in y, x = y, x sub y, bot, (p)
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import count

from .errors import FormulaSyntaxError, ScopeError


class Formula:
    __slots__ = ()

    def __str__(self):
        return print_formula(self)


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Mem(Formula):
    left: str
    right: str


@dataclass(frozen=True)
class Eq(Formula):
    left: str
    right: str


@dataclass(frozen=True)
class Subseteq(Formula):
    left: str
    right: str


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class BoundedExists(Formula):
    var: str
    bound: str
    body: Formula


@dataclass(frozen=True)
class BoundedForall(Formula):
    var: str
    bound: str
    body: Formula


BOT = Bot()
QUANTIFIERS = (Exists, Forall, BoundedExists, BoundedForall)
KEYWORDS = {"bot", "in", "sub", "forall", "exists"}


def conj(*fs):
    out = fs[0]
    for f in fs[1:]:
        out = And(out, f)
    return out


def forall_all(variables, body):
    for v in reversed(variables):
        body = Forall(v, body)
    return body


# -- variables ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def free_vars(f: Formula) -> frozenset:
    if isinstance(f, Bot):
        return frozenset()
    if isinstance(f, (Mem, Eq, Subseteq)):
        return frozenset((f.left, f.right))
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or, Implies)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.body) - {f.var}
    if isinstance(f, (BoundedExists, BoundedForall)):
        return (free_vars(f.body) - {f.var}) | {f.bound}
    raise TypeError(f"not a formula: {f!r}")


def all_vars(f: Formula) -> set:
    if isinstance(f, Bot):
        return set()
    if isinstance(f, (Mem, Eq, Subseteq)):
        return {f.left, f.right}
    if isinstance(f, Not):
        return all_vars(f.body)
    if isinstance(f, (And, Or, Implies)):
        return all_vars(f.left) | all_vars(f.right)
    out = all_vars(f.body) | {f.var}
    if isinstance(f, (BoundedExists, BoundedForall)):
        out.add(f.bound)
    return out


def fresh_var(avoid, base="v"):
    """First of base, base1, base2, ... not in ``avoid`` (deterministic)."""
    if base not in avoid:
        return base
    for i in count(1):
        v = f"{base}{i}"
        if v not in avoid:
            return v


def rename(f: Formula, x: str, y: str) -> Formula:
    """f[y/x] for variables, renaming binders that would capture y."""
    if x == y or x not in free_vars(f):
        return f
    if isinstance(f, (Mem, Eq, Subseteq)):
        r = lambda v: y if v == x else v
        return type(f)(r(f.left), r(f.right))
    if isinstance(f, Not):
        return Not(rename(f.body, x, y))
    if isinstance(f, (And, Or, Implies)):
        return type(f)(rename(f.left, x, y), rename(f.right, x, y))
    var, body = f.var, f.body
    if var == y:
        new = fresh_var(all_vars(body) | {x, y})
        body = rename(body, var, new)
        var = new
    body = rename(body, x, y)
    if isinstance(f, (Exists, Forall)):
        return type(f)(var, body)
    bound = y if f.bound == x else f.bound
    return type(f)(var, bound, body)


def check_scope(f: Formula, ctx):
    ctx = tuple(ctx)
    if len(set(ctx)) != len(ctx):
        raise ScopeError(f"repeated variable in context {list(ctx)}")
    extra = free_vars(f) - set(ctx)
    if extra:
        raise ScopeError(f"free variables {sorted(extra)} not in context {list(ctx)}")


@lru_cache(maxsize=None)
def desugar(f: Formula) -> Formula:
    """Expand ~, bounded quantifiers and sub into the core connectives."""
    if isinstance(f, (Bot, Mem, Eq)):
        return f
    if isinstance(f, Subseteq):
        z = fresh_var({f.left, f.right}, "z")
        return Forall(z, Implies(Mem(z, f.left), Mem(z, f.right)))
    if isinstance(f, Not):
        return Implies(desugar(f.body), BOT)
    if isinstance(f, (And, Or, Implies)):
        return type(f)(desugar(f.left), desugar(f.right))
    if isinstance(f, (Exists, Forall)):
        return type(f)(f.var, desugar(f.body))
    if f.var == f.bound:
        raise ScopeError(f"bounded quantifier binds its own bound {f.var!r}")
    if isinstance(f, BoundedExists):
        return Exists(f.var, And(Mem(f.var, f.bound), desugar(f.body)))
    return Forall(f.var, Implies(Mem(f.var, f.bound), desugar(f.body)))


def depth(f: Formula) -> int:
    if isinstance(f, (Bot, Mem, Eq, Subseteq)):
        return 0
    if isinstance(f, (And, Or, Implies)):
        return 1 + max(depth(f.left), depth(f.right))
    return 1 + depth(f.body)


# -- parser ------------------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(->|[~&|=().]|[A-Za-z_][A-Za-z0-9_']*)")


def _tokenize(text):
    toks, pos = [], 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            return toks
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(pos, "a token", text[pos])
        toks.append((m.group(1), m.start(1)))
        pos = m.end()


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def pos(self):
        return self.toks[self.i][1] if self.i < len(self.toks) else len(self.text)

    def expect(self, tok):
        if self.peek() != tok:
            raise FormulaSyntaxError(self.pos(), repr(tok), self.peek())
        self.i += 1

    def ident(self):
        tok = self.peek()
        if tok is None or tok in KEYWORDS or not (tok[0].isalpha() or tok[0] == "_"):
            raise FormulaSyntaxError(self.pos(), "a variable", tok)
        self.i += 1
        return tok

    def formula(self):
        left = self.disj()
        if self.peek() == "->":
            self.i += 1
            return Implies(left, self.formula())
        return left

    def disj(self):
        left = self.conj()
        while self.peek() == "|":
            self.i += 1
            left = Or(left, self.conj())
        return left

    def conj(self):
        left = self.unary()
        while self.peek() == "&":
            self.i += 1
            left = And(left, self.unary())
        return left

    def unary(self):
        tok = self.peek()
        if tok == "~":
            self.i += 1
            return Not(self.unary())
        if tok in ("forall", "exists"):
            self.i += 1
            var = self.ident()
            bound = None
            if self.peek() == "in":
                self.i += 1
                bound = self.ident()
            self.expect(".")
            body = self.formula()
            if bound is None:
                return (Forall if tok == "forall" else Exists)(var, body)
            return (BoundedForall if tok == "forall" else BoundedExists)(var, bound, body)
        return self.atom()

    def atom(self):
        tok = self.peek()
        if tok == "bot":
            self.i += 1
            return BOT
        if tok == "(":
            self.i += 1
            f = self.formula()
            self.expect(")")
            return f
        left = self.ident()
        op = self.peek()
        if op not in ("in", "=", "sub"):
            raise FormulaSyntaxError(self.pos(), "'in', '=' or 'sub'", op)
        self.i += 1
        right = self.ident()
        return {"in": Mem, "=": Eq, "sub": Subseteq}[op](left, right)


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    if p.i != len(p.toks):
        raise FormulaSyntaxError(p.pos(), "end of input", p.peek())
    return f


# -- printer -------------------------------------------------------------------------------------

_LEVEL = {Implies: 1, Or: 2, And: 3, Not: 4}


def _pp(f, ctx, tail):
    if isinstance(f, Bot):
        return "bot"
    if isinstance(f, Mem):
        return f"{f.left} in {f.right}"
    if isinstance(f, Eq):
        return f"{f.left} = {f.right}"
    if isinstance(f, Subseteq):
        return f"{f.left} sub {f.right}"
    if isinstance(f, QUANTIFIERS):
        paren = not tail
        kw = "forall" if isinstance(f, (Forall, BoundedForall)) else "exists"
        head = f"{kw} {f.var}"
        if isinstance(f, (BoundedExists, BoundedForall)):
            head += f" in {f.bound}"
        s = f"{head}. {_pp(f.body, 0, True)}"
        return f"({s})" if paren else s
    level = _LEVEL[type(f)]
    paren = level < ctx
    inner_tail = True if paren else tail
    if isinstance(f, Not):
        s = "~" + _pp(f.body, 4, inner_tail)
    elif isinstance(f, Implies):
        s = f"{_pp(f.left, 2, False)} -> {_pp(f.right, 1, inner_tail)}"
    elif isinstance(f, Or):
        s = f"{_pp(f.left, 2, False)} | {_pp(f.right, 3, inner_tail)}"
    else:
        s = f"{_pp(f.left, 3, False)} & {_pp(f.right, 4, inner_tail)}"
    return f"({s})" if paren else s


def print_formula(f: Formula) -> str:
    return _pp(f, 0, True)

"""Names (elements of the hierarchy W), finite universes, and the
truth-valued relations mem / eq / subset between names.

Names are hash-consed: structurally equal names are the same object, so
identity hashing is enough for every memo table keyed on names.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product

from .errors import BudgetExceeded, NameSyntaxError, UniverseTooLarge
from .lambda_engine import encode, numeral
from .logic_ops import iexists, times_table

DEFAULT_UNIVERSE_CAP = 100_000
DEFAULT_POWER_CAP = 4096


class Name:
    """A finite partial function from names to algebra elements."""

    __slots__ = ("entries", "rank", "key", "_map", "__weakref__")
    _interned: dict = {}

    def __init__(self, entries, rank, key):
        self.entries = entries
        self.rank = rank
        self.key = key
        self._map = dict(entries)

    @property
    def domain(self):
        return tuple(u for u, _ in self.entries)

    def __call__(self, u):
        return self._map[u]

    def get(self, u, default=None):
        return self._map.get(u, default)

    def __contains__(self, u):
        return u in self._map

    def __len__(self):
        return len(self.entries)

    def __repr__(self):
        return f"Name({self.key})"

    def sort_key(self):
        return (self.rank, len(self.key), self.key)


def make_name(entries=()) -> Name:
    """Intern the name with the given (child, element) pairs."""
    if isinstance(entries, dict):
        entries = entries.items()
    pairs = {}
    for child, value in entries:
        if not isinstance(child, Name):
            raise TypeError("domain of a name must consist of names")
        value = int(value)
        if pairs.get(child, value) != value:
            raise ValueError(f"{child!r} mapped to two different values")
        pairs[child] = value
    frozen = frozenset(pairs.items())
    hit = Name._interned.get(frozen)
    if hit is not None:
        return hit
    ordered = tuple(sorted(pairs.items(), key=lambda kv: kv[0].sort_key()))
    rank = 1 + max((c.rank for c, _ in ordered), default=-1)
    key = "{" + ",".join(f"{c.key}:{v}" for c, v in ordered) + "}"
    name = Name(ordered, rank, key)
    Name._interned[frozen] = name
    return name


EMPTY = make_name()


def domain_closure(names):
    seen = set()
    stack = list(names)
    while stack:
        a = stack.pop()
        if a in seen:
            continue
        seen.add(a)
        stack.extend(u for u in a.domain if u not in seen)
    return seen


@dataclass
class Universe:
    """A finite, domain-closed set of names, in canonical order."""
    names: tuple
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        self.names = tuple(sorted(set(self.names), key=Name.sort_key))
        self.index = {a: i for i, a in enumerate(self.names)}
        for a in self.names:
            for u in a.domain:
                if u not in self.index:
                    raise ValueError(f"universe is not domain-closed: {u!r} missing")

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, a):
        return a in self.index

    def extended(self, extra, note):
        """Domain closure of self plus ``extra``; provenance records ``note``."""
        extra = list(extra)
        names = domain_closure(list(self.names) + extra)
        prov = dict(self.provenance)
        log = list(prov.get("extensions", []))
        log.append({"note": note, "added": len(names) - len(self.names)})
        prov["extensions"] = log
        return Universe(tuple(names), prov)

    def stats(self):
        by_rank = {}
        for a in self.names:
            by_rank[a.rank] = by_rank.get(a.rank, 0) + 1
        return {
            "size": len(self.names),
            "by_rank": {str(k): by_rank[k] for k in sorted(by_rank)},
            "max_rank": max(by_rank, default=0),
            "provenance": self.provenance,
        }


def exhaustive_size(n_elements, depth):
    size = 0
    for _ in range(depth):
        size = (n_elements + 1) ** size
    return size


def build_exhaustive(alg, depth, cap=DEFAULT_UNIVERSE_CAP) -> Universe:
    """W_depth: all partial functions, iterated ``depth`` times from nothing."""
    size = 0
    for _ in range(depth):
        size = (alg.n + 1) ** size
        if size > cap:
            raise UniverseTooLarge(size, cap)
    level = []
    for _ in range(depth):
        prev = level
        level = []
        for choice in product([None, *range(alg.n)], repeat=len(prev)):
            level.append(make_name((u, v) for u, v in zip(prev, choice) if v is not None))
    return Universe(tuple(level), {"kind": "exhaustive", "depth": depth, "algebra": alg.name})


def build_curated(seeds, alg=None, budget=DEFAULT_UNIVERSE_CAP, extend=()) -> Universe:
    """Domain closure of ``seeds``, optionally grown by one round of the
    witness constructors named in ``extend`` (pair, union, power, negation).
    """
    names = domain_closure(seeds)
    log = []
    if len(names) > budget:
        raise BudgetExceeded(f"seed closure has {len(names)} names, budget {budget}")
    base = sorted(names, key=Name.sort_key)
    for kind in extend:
        if alg is None:
            raise ValueError("witness constructors need an algebra")
        if kind == "pair":
            new = [pair_name(a, b, alg) for i, a in enumerate(base) for b in base[i:]]
        elif kind == "union":
            new = [union_name(a, alg) for a in base]
        elif kind == "power":
            new = [power_name(a, alg) for a in base]
        elif kind == "negation":
            from .variants import set_negation
            new = [set_negation(a, alg) for a in base]
        else:
            raise ValueError(f"unknown constructor {kind!r}")
        before = len(names)
        names = domain_closure(list(names) + new)
        log.append({"constructor": kind, "added": len(names) - before})
        if len(names) > budget:
            raise BudgetExceeded(f"{kind} closure reached {len(names)} names, budget {budget}")
    prov = {"kind": "curated", "seeds": sorted(s.key for s in seeds), "closure": log}
    if alg is not None:
        prov["algebra"] = alg.name
    return Universe(tuple(names), prov)


# -- truth-valued relations --------------------------------------------------------------

class Relations:
    """mem / eq / subset for one algebra, memoised on name pairs.

    ``exists`` is the quantifier used inside mem; the join-based variant
    swaps in the lattice join.
    """

    def __init__(self, alg, exists=None):
        self.alg = alg
        self.imp = alg.imp
        self.meet = alg.lattice.meet_table
        self.times = times_table(alg)
        self.exists = exists or (lambda vals: iexists(alg, vals))
        self._mem = {}
        self._sub = {}
        self._eq = {}

    def mem(self, a, b):
        key = (a, b)
        r = self._mem.get(key)
        if r is None:
            t = self.times
            r = self._mem[key] = self.exists({t[v][self.eq(u, a)] for u, v in b.entries})
        return r

    def subset(self, a, b):
        key = (a, b)
        r = self._sub.get(key)
        if r is None:
            imp, meet = self.imp, self.meet
            acc = self.alg.top
            for u, v in a.entries:
                acc = meet[acc][imp[v][self.mem(u, b)]]
            r = self._sub[key] = acc
        return r

    def eq(self, a, b):
        key = (a, b)
        r = self._eq.get(key)
        if r is None:
            # x is not commutative on the nose, so (b, a) gets its own entry
            r = self._eq[key] = self.times[self.subset(a, b)][self.subset(b, a)]
        return r


def relations(alg) -> Relations:
    r = alg.cache.get("relations")
    if r is None:
        r = alg.cache["relations"] = Relations(alg)
    return r


def mem(a, b, alg, U=None):
    """a in_W b (U is accepted for symmetry with the other entry points)."""
    return relations(alg).mem(a, b)


def eq(a, b, alg, U=None):
    return relations(alg).eq(a, b)


def subset(a, b, alg, U=None):
    return relations(alg).subset(a, b)


# -- witness constructors ------------------------------------------------------------------

def pair_name(a, b, alg) -> Name:
    return make_name({a: alg.top, b: alg.top})


def union_name(a, alg) -> Name:
    return make_name({w: alg.top for u in a.domain for w in u.domain})


def gamma_restriction(g, a, alg) -> Name:
    """The name with domain dom(a) and values (u in a) x (u in g)."""
    rel = relations(alg)
    t = times_table(alg)
    return make_name({u: t[rel.mem(u, a)][rel.mem(u, g)] for u in a.domain})


def power_name(a, alg, cap=DEFAULT_POWER_CAP) -> Name:
    """Constant-top name over every name with domain dom(a)."""
    dom = a.domain
    count = alg.n ** len(dom)
    if count > cap:
        raise BudgetExceeded(f"power witness needs {count} names (cap {cap})")
    return make_name({make_name(zip(dom, g)): alg.top for g in product(range(alg.n), repeat=len(dom))})


def sep_name(a, values, alg) -> Name:
    """Same domain as a, with a(u) x values[u]."""
    t = times_table(alg)
    return make_name({u: t[v][values[u]] for u, v in a.entries})


def nat_name(n, alg) -> Name:
    return make_name({nat_name(m, alg): encode(numeral(m), {}, alg) for m in range(n)})


def omega_name(N, alg) -> Name:
    """omega truncated to the numerals below N."""
    return make_name({nat_name(n, alg): encode(numeral(n), {}, alg) for n in range(N)})


def collect_name(names, alg) -> Name:
    return make_name({g: alg.top for g in names})


# -- literal syntax ---------------------------------------------------------------------------

_NAME_TOKEN = re.compile(
    r"\s*(?:(?P<lb>\{)|(?P<rb>\})|(?P<colon>:)|(?P<comma>,)|(?P<lp>\()|(?P<rp>\))"
    r'|(?P<str>"[^"]*")|(?P<idx>#\d+)|(?P<word>[A-Za-z0-9_*\'.+-]+))'
)


def _name_tokens(text):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _NAME_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise NameSyntaxError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        out.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup)))
        pos = m.end()
    return out


def parse_name(text, alg) -> Name:
    """``{}``, ``{ <name> : <elem>, ... }``, ``nat(n)``, ``omega(N)``.

    Elements are labels (quote labels containing punctuation) or ``#i``.
    """
    toks = _name_tokens(text)
    pos = 0

    def peek():
        return toks[pos][0] if pos < len(toks) else None

    def take(kind):
        nonlocal pos
        if peek() != kind:
            where = toks[pos][2] if pos < len(toks) else "end"
            raise NameSyntaxError(f"expected {kind} at {where}")
        pos += 1
        return toks[pos - 1][1]

    def element():
        kind = peek()
        if kind == "idx":
            i = int(take("idx")[1:])
            if not 0 <= i < alg.n:
                raise NameSyntaxError(f"element index {i} out of range")
            return i
        if kind == "str":
            label = take("str")[1:-1]
        elif kind == "word":
            label = take("word")
        else:
            raise NameSyntaxError("expected an element")
        try:
            return alg.index(label)
        except KeyError:
            raise NameSyntaxError(f"unknown element {label!r}") from None

    def name():
        if peek() == "word":
            fn = take("word")
            take("lp")
            arg = take("word")
            if not arg.isdigit():
                raise NameSyntaxError(f"{fn}(...) needs a natural number, got {arg!r}")
            k = int(arg)
            take("rp")
            if fn == "nat":
                return nat_name(k, alg)
            if fn == "omega":
                return omega_name(k, alg)
            raise NameSyntaxError(f"unknown builder {fn!r}")
        take("lb")
        entries = []
        if peek() != "rb":
            while True:
                child = name()
                take("colon")
                entries.append((child, element()))
                if peek() != "comma":
                    break
                take("comma")
        take("rb")
        return make_name(entries)

    n = name()
    if pos != len(toks):
        raise NameSyntaxError(f"trailing input at {toks[pos][2]}")
    return n


_BARE = re.compile(r"[A-Za-z0-9_*'.+-]+\Z")


def render_name(a: Name, alg) -> str:
    if not a.entries:
        return "{}"
    parts = []
    for u, v in a.entries:
        lab = alg.label(v)
        if not _BARE.match(lab) or lab in ("nat", "omega"):
            lab = f'"{lab}"'
        parts.append(f"{render_name(u, alg)}: {lab}")
    return "{" + ", ".join(parts) + "}"

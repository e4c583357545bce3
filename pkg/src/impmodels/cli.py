"""Command-line front end: ``impmodels <command> [options]``.

Exit codes: 0 when every check passes, 1 on a semantic failure (invalid
algebra, a formula or axiom not validated, an unmet precondition), 2 on
usage, file or parse errors.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import asdict, dataclass

from . import __version__
from .algebra_io import algebra_to_spec, load_algebra, load_seeds, read_json
from .axioms import DEFAULT_WITNESS_BUDGET, axiom_suite
from .errors import (
    AlgebraFormatError, BudgetExceeded, FormulaSyntaxError, ImpModelsError, NameSyntaxError,
    ScopeError, TermSyntaxError, UniverseTooLarge,
)
from .formula import free_vars, parse_formula
from .imp_algebra import is_classical, is_join_compatible, validate
from .interpreter import RELATIVE, evaluator
from .manifest import load_corpus, load_samples
from .realizers import bounded_equiv_check, intlog_check, realizer_suite, subset_equiv_check
from .set_universe import DEFAULT_UNIVERSE_CAP, build_exhaustive
from .variants import (
    JOIN, KRIVINE, STANDARD, VARIANTS, j_equivalence_check, k_equivalence_check, negation_closure,
)

USAGE_ERRORS = (AlgebraFormatError, FormulaSyntaxError, NameSyntaxError, TermSyntaxError,
                ScopeError, UniverseTooLarge, BudgetExceeded)


@dataclass
class SessionConfig:
    command: str
    algebra: str
    depth: int
    seeds: str | None
    variant: str
    corpus: str | None
    format: str
    cap: int
    formula: str | None = None
    ctx: tuple = ()

    def digest(self, alg, corpus_items):
        """sha256 over everything that determines a report, file contents included."""
        payload = {
            "command": self.command,
            "algebra": algebra_to_spec(alg),
            "depth": self.depth,
            "seeds": read_json(self.seeds) if self.seeds else None,
            "variant": self.variant,
            "corpus": [[str(f), list(c)] for f, c in corpus_items] if corpus_items else None,
            "samples_version": load_samples()["version"],
            "cap": self.cap,
            "formula": self.formula,
            "ctx": list(self.ctx),
        }
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


class Session:
    def __init__(self, cfg: SessionConfig):
        if cfg.cap <= 0:
            raise AlgebraFormatError("--cap must be positive")
        if cfg.depth < 0:
            raise AlgebraFormatError("--depth must be non-negative")
        self.cfg = cfg
        self.alg = load_algebra(cfg.algebra)
        self._universe = None
        self.corpus = load_corpus(cfg.corpus) if cfg.corpus else None

    @property
    def universe(self):
        if self._universe is None:
            cfg = self.cfg
            if cfg.seeds:
                U = load_seeds(cfg.seeds, self.alg, cfg.cap)
            else:
                U = build_exhaustive(self.alg, cfg.depth, cfg.cap)
            if cfg.variant == KRIVINE:
                U = negation_closure(U, self.alg)
            self._universe = U
        return self._universe

    def corpus_items(self):
        return self.corpus if self.corpus is not None else load_samples()["corpus"]

    def envelope(self, result, universe=True):
        out = {
            "tool": "impmodels",
            "version": __version__,
            "command": self.cfg.command,
            "config": {k: v for k, v in asdict(self.cfg).items() if k != "format"},
            "config_digest": self.cfg.digest(self.alg, self.corpus),
            "scope": RELATIVE,
            "result": result,
        }
        out["config"]["ctx"] = list(self.cfg.ctx)
        if universe:
            out["universe"] = self.universe.stats()
        return out


def emit(session, text, machine, universe=True):
    if session.cfg.format == "machine":
        json.dump(session.envelope(machine, universe), sys.stdout, sort_keys=True, indent=2)
        sys.stdout.write("\n")
    else:
        print(text)


# -- commands --------------------------------------------------------------------------------

def cmd_validate(s: Session) -> int:
    rep = validate(s.alg)
    extra = {"classical": is_classical(s.alg)} if rep.valid else {}
    if rep.valid:
        extra["join_compatible"] = is_join_compatible(s.alg)
    text = rep.render()
    if extra:
        text += "\n" + "\n".join(f"{k}: {v}" for k, v in extra.items())
    emit(s, text, {**rep.as_dict(), **extra}, universe=False)
    return 0 if rep.valid else 1


def cmd_eval(s: Session) -> int:
    phi = parse_formula(s.cfg.formula)
    ctx = s.cfg.ctx or tuple(sorted(free_vars(phi)))
    s.cfg.ctx = ctx
    ev = evaluator(s.alg, s.universe, s.cfg.variant)
    ok, value = ev.validates(phi, ctx)
    label = s.alg.label(value)
    shown = f"{label} (top)" if value == s.alg.top else label
    verdict = "valid" if ok else "not valid"
    where = f"[{', '.join(ctx)}]" if ctx else "(closed)"
    text = (f"{phi} {where}\nvalue: {shown}\n{verdict} ({RELATIVE}, |U| = {len(s.universe)}, "
            f"variant {s.cfg.variant})")
    emit(s, text, {"formula": str(phi), "ctx": list(ctx), "value": label, "valid": ok,
                   "variant": s.cfg.variant})
    return 0 if ok else 1


def cmd_axioms(s: Session) -> int:
    rep = axiom_suite(s.alg, s.universe, budget=max(s.cfg.cap, DEFAULT_WITNESS_BUDGET))
    emit(s, rep.render(), rep.as_dict())
    return 0 if rep.passed else 1


def cmd_realizers(s: Session) -> int:
    rep = realizer_suite(s.alg, s.universe)
    U = s.universe
    rest = []
    for phi, ctx in load_samples()["rest"]:
        r = bounded_equiv_check(phi, ctx, s.alg, U)
        rest.append({"formula": str(phi), "ctx": list(ctx),
                     "exists": list(r["exists"]), "forall": list(r["forall"])})
    sub = list(subset_equiv_check(s.alg, U))
    seq = [{"lhs": l, "rhs": r, "ctx": list(c), "entails": ok} for l, r, c, ok in intlog_check(s.alg, U)]
    ok = (rep.holds and all(all(x["exists"]) and all(x["forall"]) for x in rest)
          and all(sub) and all(x["entails"] for x in seq))
    lines = [rep.render(), "bounded quantifiers:"]
    for x in rest:
        lines.append(f"  {'ok  ' if all(x['exists']) and all(x['forall']) else 'FAIL'} "
                     f"{x['formula']} [{', '.join(x['ctx'])}]")
    lines.append(f"  {'ok  ' if all(sub) else 'FAIL'} x sub y against the subset relation")
    lines.append("sample sequents:")
    for x in seq:
        lines.append(f"  {'ok  ' if x['entails'] else 'FAIL'} {x['lhs']} |- {x['rhs']}")
    emit(s, "\n".join(lines), {**rep.as_dict(), "bounded": rest, "subset": sub,
                               "sequents": seq, "holds": ok})
    return 0 if ok else 1


def cmd_compare(s: Session) -> int:
    corpus = s.corpus_items()
    variant = s.cfg.variant
    if variant == JOIN:
        reports = [j_equivalence_check(corpus, s.alg, s.universe)]
    elif variant == KRIVINE:
        reports = [k_equivalence_check(corpus, s.alg, s.universe)]
    else:
        reports = []
        if is_join_compatible(s.alg):
            reports.append(j_equivalence_check(corpus, s.alg, s.universe))
        if is_classical(s.alg):
            U = negation_closure(s.universe, s.alg)
            reports.append(k_equivalence_check(corpus, s.alg, U))
    lines = []
    for rep in reports:
        lines.append(f"{rep.variant} against standard over {rep.algebra}, |U| = {rep.universe_size} "
                     f"({rep.scope})")
        for r in rep.results:
            where = f" [{', '.join(r.ctx)}]" if r.ctx else ""
            lines.append(f"  {'ok  ' if r.holds else 'FAIL'} {r.formula}{where}: "
                         f"forward {r.forward}, backward {r.backward}, identical values {r.identical}")
        for k, v in rep.extra.items():
            lines.append(f"  {'ok  ' if v else 'FAIL'} {k}")
    if not reports:
        lines.append("no variant applies: the algebra is neither join-compatible nor classical")
    ok = all(r.holds for r in reports)
    emit(s, "\n".join(lines), {"reports": [r.as_dict() for r in reports], "holds": ok})
    return 0 if ok else 1


def cmd_universe(s: Session) -> int:
    st = s.universe.stats()
    lines = [f"size: {st['size']}", f"max rank: {st['max_rank']}",
             "by rank: " + ", ".join(f"{k}: {v}" for k, v in st["by_rank"].items()),
             "provenance: " + json.dumps(st["provenance"], sort_keys=True)]
    emit(s, "\n".join(lines), st)
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "eval": cmd_eval,
    "axioms": cmd_axioms,
    "realizers": cmd_realizers,
    "compare": cmd_compare,
    "universe": cmd_universe,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", default="b2",
                        help="builtin name (b2, h3, bool4, diamond, h5, pca-b2) or .alg file")
    common.add_argument("--depth", type=int, default=2, help="exhaustive universe depth")
    common.add_argument("--seeds", help="seed file for a curated universe (overrides --depth)")
    common.add_argument("--variant", choices=VARIANTS, default=None)
    common.add_argument("--corpus", help="JSON corpus of formulas for compare")
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--cap", type=int, default=DEFAULT_UNIVERSE_CAP,
                        help="largest universe the run may build")

    parser = argparse.ArgumentParser(prog="impmodels",
                                     description="Interpret set theory in finite implicative algebras.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check the algebra axioms")
    p = sub.add_parser("eval", parents=[common], help="interpret a formula")
    p.add_argument("formula")
    p.add_argument("--ctx", default="", help="comma-separated context (default: free variables)")
    sub.add_parser("axioms", parents=[common], help="run the axiom suite")
    sub.add_parser("realizers", parents=[common], help="run the realizer suite")
    sub.add_parser("compare", parents=[common], help="compare the variant interpretations")
    p = sub.add_parser("universe", parents=[common], help="universe information")
    p.add_argument("what", choices=("stats",))
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = SessionConfig(
        command=args.command, algebra=args.algebra, depth=args.depth, seeds=args.seeds,
        variant=args.variant or STANDARD, corpus=args.corpus, format=args.format, cap=args.cap,
        formula=getattr(args, "formula", None),
        ctx=tuple(v.strip() for v in getattr(args, "ctx", "").split(",") if v.strip()),
    )
    if args.command == "compare":
        cfg.variant = args.variant or "all"
    try:
        session = Session(cfg)
        return COMMANDS[args.command](session)
    except USAGE_ERRORS as exc:
        print(f"impmodels: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ImpModelsError as exc:
        print(f"impmodels: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

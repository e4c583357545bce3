"""Versioned sample formulas for the schema checks (shipped as package data)."""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .errors import AlgebraFormatError
from .formula import free_vars, parse_formula

MANIFEST_VERSION = 1


def _read(path):
    if path is None:
        return json.loads(resources.files("impmodels").joinpath("data/samples.json").read_text())
    with open(path) as fh:
        return json.load(fh)


@lru_cache(maxsize=None)
def load_samples(path=None) -> dict:
    raw = _read(path)
    if raw.get("version") != MANIFEST_VERSION:
        raise ValueError(f"unsupported sample manifest version {raw.get('version')!r}")
    out = {"version": raw["version"]}
    for key, items in raw.items():
        if key == "version":
            continue
        if key == "intlog":
            out[key] = tuple((parse_formula(i["lhs"]), parse_formula(i["rhs"]), tuple(i["ctx"]))
                             for i in items)
        else:
            out[key] = tuple((parse_formula(i["phi"]), tuple(i["ctx"])) for i in items)
    return out


def load_corpus(path) -> tuple:
    """A corpus file: JSON list of {"phi": ..., "ctx": [...]} or bare formula strings."""
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise AlgebraFormatError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise AlgebraFormatError(f"{path}: invalid JSON ({exc.msg})") from None
    if isinstance(raw, dict):
        raw = raw.get("corpus", [])
    out = []
    for item in raw:
        if isinstance(item, str):
            phi = parse_formula(item)
            out.append((phi, tuple(sorted(free_vars(phi)))))
        elif isinstance(item, dict) and "phi" in item:
            phi = parse_formula(item["phi"])
            ctx = item.get("ctx")
            out.append((phi, tuple(ctx) if ctx is not None else tuple(sorted(free_vars(phi)))))
        else:
            raise AlgebraFormatError(f"{path}: corpus entries must be strings or {{'phi': ...}}")
    return tuple(out)

"""Set theory interpreted in finite implicative algebras, with realizer and axiom checks."""
from .algebra_io import algebra_from_spec, load_algebra
from .axioms import axiom_suite
from .formula import parse_formula, print_formula
from .imp_algebra import BUILTIN, ImpAlgebra, check_valid, validate
from .interpreter import interpret, validates
from .realizers import realizer_suite
from .set_universe import Universe, build_curated, build_exhaustive, parse_name, render_name
from .variants import interpret_J, interpret_K, j_equivalence_check, k_equivalence_check

__version__ = "0.1.0"

__all__ = [
    "BUILTIN", "ImpAlgebra", "Universe", "algebra_from_spec", "axiom_suite", "build_curated",
    "build_exhaustive", "check_valid", "interpret", "interpret_J", "interpret_K",
    "j_equivalence_check", "k_equivalence_check", "load_algebra", "parse_formula", "parse_name",
    "print_formula", "realizer_suite", "render_name", "validate", "validates",
]

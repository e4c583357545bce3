"""Exception hierarchy shared by all modules."""


class ImpModelsError(Exception):
    pass


# finite orders
class NotAPartialOrder(ImpModelsError):
    def __init__(self, reason, witness):
        super().__init__(f"not a partial order ({reason}): {witness}")
        self.reason = reason
        self.witness = witness


class NotALattice(ImpModelsError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NoTop(NotALattice):
    def __init__(self):
        super().__init__("poset has no top element")


class NoBottom(NotALattice):
    def __init__(self):
        super().__init__("poset has no bottom element")


class LatticeTooLarge(ImpModelsError):
    pass


class NotHeyting(ImpModelsError):
    def __init__(self, a, b):
        super().__init__(f"lattice is not Heyting: residuation fails at ({a}, {b})")
        self.witness = (a, b)


# algebras
class InvalidAlgebra(ImpModelsError):
    def __init__(self, report):
        super().__init__("invalid implicative algebra:\n" + report.render())
        self.report = report


class CarrierTooLarge(ImpModelsError):
    pass


# lambda terms
class UnboundVariable(ImpModelsError):
    def __init__(self, name):
        super().__init__(f"unbound variable {name!r}")
        self.name = name


class UnknownCombinator(ImpModelsError):
    pass


class ReductionBudgetExceeded(ImpModelsError):
    pass


class TermSyntaxError(ImpModelsError):
    pass


# names and universes
class UniverseTooLarge(ImpModelsError):
    def __init__(self, estimate, cap):
        super().__init__(f"universe would hold about {estimate} names (cap {cap})")
        self.estimate = estimate


class BudgetExceeded(ImpModelsError):
    pass


class NameSyntaxError(ImpModelsError):
    pass


# formulas
class FormulaSyntaxError(ImpModelsError):
    def __init__(self, position, expected, found=None):
        msg = f"syntax error at position {position}: expected {expected}"
        if found is not None:
            msg += f", found {found!r}"
        super().__init__(msg)
        self.position = position
        self.expected = expected


class ScopeError(ImpModelsError):
    pass


# variants
class NotJoinCompatible(ImpModelsError):
    pass


class NotClassical(ImpModelsError):
    pass


class UniverseNotNegationClosed(ImpModelsError):
    pass


# files
class AlgebraFormatError(ImpModelsError):
    pass

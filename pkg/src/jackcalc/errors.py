"""Exceptions shared across the package."""


class InputError(ValueError):
    """Raised when arguments are outside a routine's stated domain."""


class SpectralDegeneracy(RuntimeError):
    """Raised when the triangular eigenvector solve hits a repeated
    eigenvalue for every retry of the generic operator combination."""


class DegreeCheckFailure(RuntimeError):
    """Raised when an interpolated coefficient family fails its degree
    bound or is unstable under grid enlargement."""


class TriangularityError(RuntimeError):
    """Raised when a Cherednik operator image escapes the down-set of
    its source monomial, so the eigen-solve cannot be triangular in the
    configured composition order."""


class ParameterError(ValueError):
    """Raised when a special-function parameter hits a genuine pole
    (an uncancelled zero denominator in a Pochhammer ratio)."""

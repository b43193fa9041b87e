"""Exception types shared across the package."""


class PerronPerturbError(Exception):
    """Base class for all package errors."""


class ConvergenceFailure(PerronPerturbError):
    """An iterative numerical procedure did not converge."""


class NotSimple(PerronPerturbError):
    """The spectral radius is not an algebraically simple eigenvalue."""


class IllConditioned(PerronPerturbError):
    """A rank decision was too ambiguous to trust."""


class NotNonderogatory(PerronPerturbError):
    """The matrix has a minimal polynomial of degree < n."""


class DimensionMismatch(PerronPerturbError):
    """Input dimensions do not match what the operation requires."""


class NonsingularConstantTerm(PerronPerturbError):
    """The characteristic polynomial has a nonzero constant term where a
    singular matrix was required."""


class GenerationFailure(PerronPerturbError):
    """Random problem generation exhausted its rejection budget."""


class ParseError(PerronPerturbError):
    """A problem file could not be parsed or validated."""


class UnknownSelector(PerronPerturbError):
    """An unrecognized built-in example selector."""

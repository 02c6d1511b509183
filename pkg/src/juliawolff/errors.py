"""Exception hierarchy shared by all modules."""


class JuliaWolffError(Exception):
    """Base class for library errors."""


class DomainError(JuliaWolffError, ValueError):
    """A point lies outside the domain an operation accepts."""


class PoleError(JuliaWolffError, ZeroDivisionError):
    """Evaluation hit a pole of a rational map."""


class ModelMismatchError(JuliaWolffError, ValueError):
    """Disk and half-plane maps were combined."""


class PreconditionError(JuliaWolffError, ValueError):
    """A checker's hypothesis does not hold for the given map."""


class SpecError(JuliaWolffError, ValueError):
    """Malformed map specification. ``path`` names the offending field."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class NonConvergenceError(JuliaWolffError, RuntimeError):
    """An iterative solver ran out of budget.

    ``diagnostics`` carries whatever the solver learned before giving up.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class BurnsKrantzViolation(JuliaWolffError, RuntimeError):
    """A non-identity map agrees with the identity to fourth order at a
    boundary point. The theorem rules this out, so it means the map
    construction or the numerics are broken."""

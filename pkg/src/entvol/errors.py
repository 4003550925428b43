"""Exception hierarchy shared by the package."""


class EntvolError(Exception):
    """Base class for all library errors."""


class ParseError(EntvolError, ValueError):
    pass


class NotPseudoAnosov(EntvolError, ValueError):
    """The input does not describe a pseudo-Anosov class."""

    def __init__(self, message, missing=()):
        super().__init__(message)
        self.missing = tuple(missing)


class NotPrimitive(EntvolError, ValueError):
    pass


class InternalGluingError(EntvolError, RuntimeError):
    pass


class SolverError(EntvolError, RuntimeError):
    """Base for failures of the volume solver."""


class EmptyPolytope(SolverError):
    pass


class SolverNoConvergence(SolverError):
    def __init__(self, message, grad_norm=float("nan")):
        super().__init__(message)
        self.grad_norm = grad_norm


class DegenerateGeometry(SolverError):
    pass

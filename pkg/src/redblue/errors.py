"""Exception types shared across the package."""


class DegeneracyError(Exception):
    """Input violates the non-degeneracy assumptions (overlaps, shared
    endpoints, triple points, non-transversal repeated contacts)."""


class OnBoundaryError(Exception):
    """Point-location query hit a curve instead of an open face."""


class SizeGuardError(Exception):
    """A brute-force operation was asked to run above its instance-size cap."""


class PreconditionFailure(Exception):
    """An operation's stated precondition does not hold for the input."""


class FrameworkStall(Exception):
    """The iterated conflict-free coloring removed no vertex in a round,
    which means the supplied proper colorer is broken."""


class CFCheckFailure(Exception):
    """A conflict-free coloring pipeline produced output that fails its own
    checker.  This should never happen on valid inputs."""


class ParseError(Exception):
    """Instance text could not be parsed; carries a 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)

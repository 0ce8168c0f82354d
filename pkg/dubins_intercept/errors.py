"""Exceptions raised by dubins_intercept"""


class DomainError(ValueError):
    """Raised when a function is called outside its mathematical domain."""


class InconsistentRootError(RuntimeError):
    """Raised when a schedule is recovered at a time where its family is undefined."""


class UnknownFamilyError(ValueError):
    """Raised when a residual family label cannot be resolved."""


class ScenarioError(ValueError):
    """Raised when a scenario or track file cannot be understood.

    The message is anchored to a file and line so that it can be reported
    verbatim by the command-line interface.
    """

    def __init__(self, path: str, line: int, reason: str):
        self.path = path
        self.line = line
        self.reason = reason
        super().__init__(f"{path}:{line}: {reason}")


class UnknownTargetKindError(ScenarioError):
    """Raised when a scenario names a target kind that does not exist."""

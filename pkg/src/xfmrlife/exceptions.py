"""Exception hierarchy; the CLI maps these onto exit codes."""


class XfmrLifeError(Exception):
    """Base class for all package errors."""


class DomainError(XfmrLifeError, ValueError):
    """An argument lies outside the mathematical or physical domain."""


class UsageError(XfmrLifeError, ValueError):
    """The call itself is malformed: empty input, wrong order, missing state."""


class ValidationError(XfmrLifeError, ValueError):
    """Input data failed a validation rule. Carries the offending line when known."""

    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}"
        if line is not None:
            where += f"{':' if where else 'line '}{line}"
        super().__init__(f"{where}: {message}" if where else message)


class NoAgingError(XfmrLifeError, ArithmeticError):
    """The cumulative average loss of life is zero, so the lifetime is unbounded."""

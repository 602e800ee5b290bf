"""Exception hierarchy shared by the library and the command line."""


class CbordError(Exception):
    """Base class for every error raised by cbord."""


class InputError(CbordError, ValueError):
    """Malformed or out-of-domain input (CLI exit code 2)."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class BudgetExceededError(CbordError):
    """The HOMFLY engine refused a braid larger than its budget (exit code 3)."""


class FormulaOutOfScopeError(InputError):
    """A closed formula was requested outside its hypotheses."""


class GenusKindError(InputError):
    """A genus value of the wrong kind (exact / lower / upper) was supplied."""

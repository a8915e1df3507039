"""Exception hierarchy; CLI exit codes hang off the ``exit_code`` attribute."""


class IsolabError(Exception):
    exit_code = 1


class FieldError(IsolabError):
    pass


class LinalgError(IsolabError):
    pass


class AlgebraError(IsolabError):
    pass


class InvolutionError(IsolabError):
    pass


class PreconditionError(IsolabError):
    pass


class ResourceGuardError(IsolabError):
    pass


class ExpectationMismatch(IsolabError):
    exit_code = 2


class Inconclusive(IsolabError):
    """A randomized certificate search ran out of budget."""

    exit_code = 3

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class InternalInconsistency(IsolabError):
    """Two independent computations disagreed, or a verified identity failed."""

    exit_code = 4

    def __init__(self, message: str, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample

"""Exception hierarchy shared by all modules."""


class AbsNormError(Exception):
    """Base class for errors raised by absnorm."""


class MalformedInputError(AbsNormError, ValueError):
    """Input could not be parsed into a norm, point or operator."""


class ValidationError(AbsNormError, ValueError):
    """A norm candidate violates one of the absolute-normalized-norm axioms."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class ContractError(AbsNormError, ValueError):
    """A precondition of an operation does not hold (non-unit functional, wrong class, ...)."""


class UnsupportedRepresentationError(AbsNormError, TypeError):
    """The operation needs an exact polygonal norm but got a black-box one."""

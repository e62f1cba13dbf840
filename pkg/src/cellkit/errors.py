"""Exception hierarchy.

The CLI maps these onto exit codes: ``BudgetExceeded`` -> 2, ``TheoremViolation`` -> 3,
any other ``CellkitError`` -> 1.
"""


class CellkitError(Exception):
    pass


class InputError(CellkitError):
    pass


class ParseError(InputError):
    def __init__(self, message, position=0, text=None):
        self.position = position
        self.text = text
        super().__init__(f"{message} (at offset {position})")


class UnknownGroupName(InputError):
    pass


class InvalidPermutation(InputError):
    pass


class NotAGroup(InputError):
    pass


class NotAHomomorphism(InputError):
    pass


class IllDefinedHom(InputError):
    """Matrix does not carry source relations into target relations."""


class BudgetExceeded(CellkitError):
    pass


class OrderCapExceeded(BudgetExceeded):
    pass


class NoGeneratingTuple(CellkitError):
    pass


class PreconditionError(CellkitError, ValueError):
    pass


class NotElementaryAbelianCokernel(PreconditionError):
    pass


class NotInjective(PreconditionError):
    pass


class NotSurjective(PreconditionError):
    pass


class NotPTorsionGroup(PreconditionError):
    pass


class TheoremViolation(CellkitError):
    """A computed value contradicts a proven statement; always an implementation bug."""

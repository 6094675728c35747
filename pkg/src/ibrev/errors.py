"""Exception types shared across the workbench."""


class IbrevError(Exception):
    """Base class for all workbench errors."""


class FormulaSyntaxError(IbrevError, ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownAtomError(IbrevError, ValueError):
    def __init__(self, atom):
        super().__init__(f"unknown atom {atom!r}")
        self.atom = atom


class LanguageMismatchError(IbrevError, ValueError):
    pass


class InvalidPreorderError(IbrevError, ValueError):
    pass


class EmptyInputError(IbrevError, ValueError):
    """Revision by an inconsistent (empty) input.

    ``index`` is the position in an input sequence when the failure happened
    inside a fold, otherwise ``None``.
    """

    def __init__(self, message="revision input has no models", index=None):
        if index is not None:
            message = f"{message} (input {index})"
        super().__init__(message)
        self.index = index


class ArityError(IbrevError, ValueError):
    pass


class BudgetExceeded(IbrevError):
    pass

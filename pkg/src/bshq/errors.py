"""Exception hierarchy.

Everything raised deliberately by the package derives from :class:`BSHQError`
so the CLI can map it to a usage exit code.
"""


class BSHQError(Exception):
    pass


class InvalidBoundsError(BSHQError, ValueError):
    pass


class OutOfRangeError(BSHQError, IndexError):
    pass


class LatticeMismatchError(BSHQError, ValueError):
    pass


class DomainError(BSHQError, ValueError):
    pass


class UnquantizableExpressionError(BSHQError, ValueError):
    pass


class NotPrequantizableError(BSHQError, ValueError):
    pass


class HalfIntegerSpinError(BSHQError, ValueError):
    pass


class BranchCutError(BSHQError, ValueError):
    pass


class EnergyNotAdmissibleError(BSHQError, ValueError):
    pass


class MultiWellError(BSHQError, ValueError):
    pass


class ExprSyntaxError(BSHQError, ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position

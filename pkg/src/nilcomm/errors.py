"""Exception hierarchy shared by all nilcomm modules."""


class NilcommError(Exception):
    """Base class for every error raised by this package."""


class PreconditionViolated(NilcommError, ValueError):
    """An operation was called on inputs outside its domain."""


class DimensionMismatch(PreconditionViolated):
    pass


class NotNilpotent(PreconditionViolated):
    pass


class NotInCommutator(PreconditionViolated):
    pass


class NotBlockUpperTriangular(PreconditionViolated):
    pass


class NotInKernel(PreconditionViolated):
    pass


class NonNilpotentBlock(PreconditionViolated):
    pass


class DependentForms(PreconditionViolated):
    pass


class NotGorensteinFlagged(PreconditionViolated):
    pass


class InconsistentSystem(PreconditionViolated):
    pass


class NotArtinian(NilcommError):
    pass


class InhomogeneousIdeal(PreconditionViolated):
    pass


class ParseError(NilcommError, ValueError):
    """Polynomial text could not be parsed.

    ``position`` is the 0-based character offset of the offending token.
    """

    def __init__(self, message, position, text=None):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position
        self.text = text

    def caret(self):
        if self.text is None:
            return ""
        return f"{self.text}\n{' ' * self.position}^"


class UnknownVariable(ParseError):
    def __init__(self, name, position, text=None):
        super().__init__(f"unknown variable {name!r}", position, text)
        self.name = name


class InternalInconsistency(NilcommError, RuntimeError):
    """Two independent routes disagreed. Always a bug, never a math outcome."""

"""Exception hierarchy."""


class FolresError(Exception):
    """Base class for all errors raised by folres."""


class NotInvariant(FolresError):
    """The reference curve is not invariant but an index was requested."""


class IsInvariant(FolresError):
    """The reference curve is invariant but a tangency order was requested."""


class NonRationalSingularity(FolresError):
    """A needed singular or tangency point has an irrational coordinate."""

    def __init__(self, message, residual=None, location=None):
        super().__init__(message)
        self.residual = residual
        self.location = location


class DepthExceeded(FolresError):
    """Reduction did not finish within ``max_depth`` generations of blow-ups."""

    def __init__(self, message, offending=()):
        super().__init__(message)
        self.offending = list(offending)


class NotASeparatrix(FolresError):
    pass


class AttachmentConflict(FolresError):
    pass


class InvalidParams(FolresError):
    pass


class FormSyntaxError(FolresError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NonRationalLiteral(FormSyntaxError):
    pass

class GrzError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(GrzError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class MultisetError(GrzError):
    pass


class InapplicableRule(GrzError):
    """A rule instance does not fit the conclusion it is applied to."""


class BudgetExceeded(GrzError):
    """Too many nodes were materialized; the input is probably not productive."""


class InvalidProof(GrzError):
    def __init__(self, report):
        super().__init__(str(report))
        self.report = report


class ShapeError(GrzError):
    """A transformer was applied to a proof of the wrong sequent."""


class ContextMismatch(GrzError):
    pass


class NotInP1(GrzError):
    """A cut was met in the main fragment where none is allowed."""


class CutFound(GrzError):
    pass

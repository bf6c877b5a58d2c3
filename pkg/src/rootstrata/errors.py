"""Exception hierarchy. Every error carries a stable ``code`` for the CLI."""


class RootStrataError(Exception):
    code = "ERROR"


class AxiomViolation(RootStrataError):
    code = "AXIOM_VIOLATION"

    def __init__(self, axiom: str, detail: str = ""):
        self.axiom = axiom
        super().__init__(f"{axiom}: {detail}" if detail else axiom)


class InvalidCartanType(RootStrataError):
    code = "INVALID_TYPE"


class NotSimpleSystem(RootStrataError):
    code = "NOT_SIMPLE_SYSTEM"


class NotClosed(RootStrataError):
    code = "NOT_CLOSED"


class OrderExceeded(RootStrataError):
    code = "ORDER_EXCEEDED"


class BudgetExceeded(RootStrataError):
    code = "BUDGET_EXCEEDED"


class TooLarge(RootStrataError):
    code = "TOO_LARGE"


class Rejected(RootStrataError):
    code = "REJECTED"


class ParseError(RootStrataError):
    code = "PARSE_ERROR"


class DimensionMismatch(RootStrataError):
    code = "DIMENSION_MISMATCH"

"""Exception types shared across the toolkit."""


class QuiverRepError(Exception):
    """Base class for all toolkit errors."""


class ParseError(QuiverRepError):
    """Malformed quiver or representation text; carries a 1-based line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CycleError(QuiverRepError):
    """The quiver contains a directed cycle; ``cycle`` lists a witness walk."""

    def __init__(self, cycle):
        super().__init__("directed cycle: " + " -> ".join(str(v) for v in cycle))
        self.cycle = tuple(cycle)


class MismatchError(QuiverRepError):
    """Operands live over different fields/quivers or have incompatible shapes."""


class InconclusiveError(QuiverRepError):
    """A bounded or randomized search ended without a definite answer.

    Distinct from a definite negative: callers must not treat this as "no".
    """


class BudgetExceededError(QuiverRepError):
    """A closure or enumeration exceeded its work budget."""


class AuditError(QuiverRepError):
    """An exactness or theorem audit failed; indicates a bug or a disproof."""

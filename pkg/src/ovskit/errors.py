"""Exception hierarchy shared by all ovskit modules.

Errors fall into three families that the CLI maps onto exit codes:
parse errors, contract violations (a caller handed us an object that
does not satisfy a documented precondition), and engine errors
(resource budgets and internal consistency checks).
"""


class OvskitError(Exception):
    """Base class for all errors raised by ovskit."""


class ParseError(OvskitError):
    """Malformed script or formula text."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class UnassignedVariable(OvskitError):
    """Evaluation reached a free variable with no assigned value."""


class BudgetExceeded(OvskitError):
    """A configured resource bound (cells, atoms, dimension) was hit."""


class EngineInvariantError(OvskitError):
    """An internal consistency check failed; results cannot be trusted."""


class EncodingDisagreement(EngineInvariantError):
    """Two encodings of the same predicate decided differently."""


class PostconditionFailed(EngineInvariantError):
    """A computed object violates its own documented postcondition."""


class InternalInvariantViolation(EngineInvariantError):
    """A structural invariant of a multi-step construction failed."""


class ContractViolation(OvskitError):
    """An input violates a documented precondition."""


class DimensionMismatch(ContractViolation):
    """Operands have incompatible ambient dimensions."""


class NotAWedge(ContractViolation):
    """The operation requires a verified wedge and the set is not one."""


class NotACone(ContractViolation):
    """The operation requires a verified cone and the set is not one."""


class NotPositiveElement(ContractViolation):
    """The element is required to lie in the positive set and does not."""


class NotASubspace(ContractViolation):
    """The set is required to be a vector subspace and is not."""


class NotAnOrderIdeal(ContractViolation):
    """Quotients require the kernel to span an order ideal."""


class TargetNotArchimedean(ContractViolation):
    """Factorization targets must carry an Archimedean positive set."""


class MapNotPositive(ContractViolation):
    """The linear map fails to send the positive set into the target's."""


class KernelConditionFailed(ContractViolation):
    """The map does not vanish on the kernel of the quotient projection."""


class NonUniqueSupremum(ContractViolation):
    """The least-upper-bound set is nonempty but not a single point."""

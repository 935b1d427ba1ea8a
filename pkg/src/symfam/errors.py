"""Exception hierarchy shared across the package.

The CLI maps these onto its exit-code contract: bad input (parse errors,
precondition violations) exits 2, capability and budget limits exit 3.
Exit 1 is reserved for a checked mathematical property coming out false,
which is a result state, not an exception.
"""


class SymfamError(Exception):
    """Base class for all package errors."""


class UniverseMismatchError(SymfamError):
    """Two objects over different ground sets were combined."""


class ParseError(SymfamError):
    """A family or group file is malformed."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class NotApplicableError(SymfamError):
    """A verifier's precondition does not hold for the given input."""


class CapabilityError(SymfamError):
    """The request exceeds a documented capability limit (e.g. universe size)."""


class BudgetError(CapabilityError):
    """A computation would exceed its elementary-operation budget."""


class ContractViolationError(SymfamError):
    """A caller-supplied object violates its stated contract (e.g. a
    non-monotone function passed to the threshold locator)."""


class UnreachableLevelError(SymfamError):
    """The requested measure level lies outside the function's range."""

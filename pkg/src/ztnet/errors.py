"""Exception types shared across the package."""


class DegenerateInput(ValueError):
    """Input violates a general-position or distinctness assumption."""


class PreconditionViolated(ValueError):
    """A documented precondition of an operation does not hold."""


class BudgetExceeded(RuntimeError):
    """An enumeration exceeded its configured search budget."""


class InvalidNet(ValueError):
    """A net failed verification where a valid net was required."""


class InfeasibleNet(ValueError):
    """No valid net exists (a heavy hyperedge is smaller than the tuple size)."""


class InequalityViolated(AssertionError):
    """A counting inequality that must hold exactly was violated."""


class SchemaError(ValueError):
    """An instance file does not conform to the JSON schema."""


class ParamOutOfRange(ValueError):
    """A generator parameter lies outside its documented range."""

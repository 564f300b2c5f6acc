"""Exception types shared across the package."""


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed its configured size budget."""


class ComplexTooLarge(BudgetExceeded):
    """A homology request exceeds the supported face count."""


class GeneralPositionError(ArithmeticError):
    """A test map meets the diagonal on the boundary of a simplex."""


class ConfigError(ValueError):
    """A colored configuration file or value could not be parsed."""

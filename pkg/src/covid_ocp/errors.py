class DomainError(ValueError):
    """Input outside the model's valid domain (non-finite, negative, out of bounds)."""


class SingularParameterError(DomainError):
    pass


class NumericalError(ArithmeticError):
    """A solve produced non-finite values or hit a degenerate population."""

    def __init__(self, message, iteration=None, index=None):
        super().__init__(message)
        self.iteration = iteration
        self.index = index


class UndefinedMetricError(ValueError):
    pass


class TieError(ValueError):
    pass


class ConfigError(ValueError):
    """Invalid run configuration; ``field`` names the offending key."""

    def __init__(self, message, field=None):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field

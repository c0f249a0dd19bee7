"""Exception types shared across the zsections package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConvergenceError(ArithmeticError):
    """A series or iteration failed to reach its stated accuracy target."""


class ResourceLimitError(RuntimeError):
    """A request exceeds a configured size ceiling and was refused."""


class ConfigError(ValueError):
    """A run configuration is malformed or internally inconsistent."""

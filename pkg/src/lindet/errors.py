"""Exception types shared across the package."""


class LindetError(Exception):
    """Base class for all package-specific errors."""


class DimensionError(LindetError, ValueError):
    """Operands act on different qubit counts or incompatible dimensions."""


class CapacityError(LindetError, ValueError):
    """Requested qubit count exceeds the configured dense-simulation capacity."""


class DomainError(LindetError, ValueError):
    """A numeric argument is outside its mathematically valid domain."""


class ConsistencyError(LindetError, ValueError):
    """A quantity violates a structural property it is required to satisfy
    (e.g. an imaginary residue or a probability defect beyond tolerance)."""


class NumericError(LindetError, RuntimeError):
    """A numerical routine (eigensolver, exponential) failed to converge."""


class ConfigError(LindetError, ValueError):
    """A generator config file is malformed or violates an invariant."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)

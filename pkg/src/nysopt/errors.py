"""Exception types shared across the solver."""


class NysoptError(Exception):
    """Base class for all solver errors."""


class DimensionMismatchError(NysoptError, ValueError):
    """An operator or vector was used with inconsistent dimensions."""


class CapabilityError(NysoptError, TypeError):
    """An operator does not support the requested operation (e.g. adjoint)."""


class DataError(NysoptError, ValueError):
    """Problem data violates a structural requirement (e.g. not PSD)."""


class NumericalError(NysoptError, ArithmeticError):
    """Non-finite values or another numerical failure inside an iteration."""


class NotSPDError(NumericalError):
    """Conjugate gradient detected a direction of nonpositive curvature."""


class InputError(NysoptError, ValueError):
    """Malformed input file or configuration."""

"""Exception hierarchy shared by the whole package."""


class QGrassError(Exception):
    """Base class for all errors raised by qgrass."""


class DimensionError(QGrassError, ValueError):
    """Operands have incompatible shapes or ambient dimensions."""


class BudgetExceeded(QGrassError):
    """An enumeration would exceed the configured point budget."""


class InconsistencyError(QGrassError):
    """An internal identity that must hold exactly failed.

    Raised only when the computation contradicts a proven structural fact,
    which signals an implementation bug rather than bad input.
    """

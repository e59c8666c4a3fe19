"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of a function."""


class DegenerateDataError(ValueError):
    """All observations are equal where a non-degenerate sample is required."""


class CatalogError(KeyError):
    """Unknown prior identifier or unsupported scope for a catalog prior."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class ProprietyGateError(RuntimeError):
    """Sampling was requested for a posterior that is not certified proper."""


class QuadratureError(RuntimeError):
    """A quadrature estimate failed its own error check."""


class DataFormatError(ValueError):
    """A dataset file could not be parsed or validated."""

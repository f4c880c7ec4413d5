"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid grid/experiment configuration (bad sizes, out-of-range parameters)."""


class GridMismatch(ValueError):
    """Operands live on different grids or dimensions."""


class EllipticityError(ValueError):
    """Coefficient matrix fails the two-sided ellipticity bounds."""

    def __init__(self, message, t=None, x=None, xi=None):
        super().__init__(message)
        self.t = t
        self.x = x
        self.xi = xi


class DealiasError(ValueError):
    """Field carries spectral mass beyond the dealiasing headroom."""


class DomainError(ValueError):
    """Operation asked to act outside its admissible parameter window."""

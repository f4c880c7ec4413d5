"""Discrete periodic torus and spectral fields.

The domain is [0, 2pi)^N with N in {1, 2} and M points per axis (M a power of
two).  Fourier coefficients are indexed by the integer lattice
{-M/2, ..., M/2 - 1}^N and normalized as series coefficients:

    u(x) = sum_xi  uhat(xi) e^{i xi . x},      uhat(xi) = M^{-N} sum_m u(x_m) e^{-i xi . x_m},

so a pure mode e^{i k x} has a single unit coefficient.  Two inner products
coexist in the package and are both exposed here:

* ``l2_inner``  -- the (2pi)^N-normalized quadrature pairing used by the
  energy bookkeeping, (e^{ix}, e^{ix}) = (2pi)^N;
* ``spectral_inner`` / ``l2_norm`` -- the plain lattice (Parseval) sum used by
  every norm module, so that the Sobolev weight at s = 0 reproduces it exactly.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigError, GridMismatch

PERIOD = 2.0 * np.pi


def _is_power_of_two(m: int) -> bool:
    return m >= 1 and (m & (m - 1)) == 0


class TorusGrid:
    """Uniform grid on the torus [0, 2pi)^N with its integer frequency lattice."""

    def __init__(self, dim: int, points_per_axis: int):
        if dim not in (1, 2):
            raise ConfigError(f"dim must be 1 or 2, got {dim}")
        if not _is_power_of_two(points_per_axis) or points_per_axis < 16:
            raise ConfigError(
                f"points_per_axis must be a power of two >= 16, got {points_per_axis}"
            )
        self.dim = dim
        self.m = points_per_axis
        self.shape = (points_per_axis,) * dim
        self.spacing = PERIOD / points_per_axis
        self.cell_volume = self.spacing**dim
        # fftfreq order: 0, 1, ..., M/2-1, -M/2, ..., -1 (matches numpy fftn).
        self.freqs = np.fft.fftfreq(points_per_axis, d=1.0 / points_per_axis)
        axes = np.meshgrid(*([self.freqs] * dim), indexing="ij")
        self.freq_axes = tuple(axes)
        self.abs_xi = np.sqrt(sum(a**2 for a in axes))
        self.nyquist = points_per_axis // 2

    def axis_points(self) -> np.ndarray:
        return np.arange(self.m) * self.spacing

    def nodes(self):
        """Meshgrid of physical sample points, one array per axis."""
        x = self.axis_points()
        return np.meshgrid(*([x] * self.dim), indexing="ij")

    def forward(self, values: np.ndarray) -> np.ndarray:
        return np.fft.fftn(values) / self.m**self.dim

    def inverse(self, coefficients: np.ndarray) -> np.ndarray:
        return np.fft.ifftn(coefficients) * self.m**self.dim

    def same_as(self, other: "TorusGrid") -> bool:
        return self.dim == other.dim and self.m == other.m

    def __repr__(self):
        return f"TorusGrid(dim={self.dim}, M={self.m})"


class SpectralField:
    """A scalar field held jointly in physical samples and Fourier coefficients.

    Fields are immutable after construction (arrays are marked read-only);
    whichever representation was not supplied is materialized lazily.
    """

    def __init__(self, grid: TorusGrid, values=None, coefficients=None, parity=None):
        if values is None and coefficients is None:
            raise ConfigError("need values or coefficients")
        self.grid = grid
        self._values = None
        self._coefficients = None
        if values is not None:
            values = np.asarray(values, dtype=complex)
            if values.shape != grid.shape:
                raise GridMismatch(f"values shape {values.shape} != grid {grid.shape}")
            values.setflags(write=False)
            self._values = values
        if coefficients is not None:
            coefficients = np.asarray(coefficients, dtype=complex)
            if coefficients.shape != grid.shape:
                raise GridMismatch(
                    f"coefficient shape {coefficients.shape} != grid {grid.shape}"
                )
            coefficients.setflags(write=False)
            self._coefficients = coefficients
        if parity is None:
            if values is not None and np.allclose(values.imag, 0.0, atol=1e-13):
                parity = "real"
            else:
                parity = "complex"
        self.parity = parity

    @classmethod
    def from_values(cls, grid, values, parity=None):
        return cls(grid, values=values, parity=parity)

    @classmethod
    def from_coefficients(cls, grid, coefficients, parity=None):
        return cls(grid, coefficients=coefficients, parity=parity)

    @classmethod
    def zero(cls, grid):
        return cls(grid, coefficients=np.zeros(grid.shape, dtype=complex), parity="real")

    @property
    def values(self) -> np.ndarray:
        if self._values is None:
            v = self.grid.inverse(self._coefficients)
            v.setflags(write=False)
            self._values = v
        return self._values

    @property
    def coefficients(self) -> np.ndarray:
        if self._coefficients is None:
            c = self.grid.forward(self._values)
            c.setflags(write=False)
            self._coefficients = c
        return self._coefficients

    def __add__(self, other):
        self._check(other)
        return SpectralField(self.grid, coefficients=self.coefficients + other.coefficients)

    def __sub__(self, other):
        self._check(other)
        return SpectralField(self.grid, coefficients=self.coefficients - other.coefficients)

    def __mul__(self, scalar):
        return SpectralField(self.grid, coefficients=self.coefficients * scalar)

    __rmul__ = __mul__

    def _check(self, other):
        if not isinstance(other, SpectralField) or not self.grid.same_as(other.grid):
            raise GridMismatch("fields live on different grids")

    def derivative(self, axis: int = 0, order: int = 1) -> "SpectralField":
        """Spectral partial derivative d^order / dx_axis^order."""
        mult = (1j * self.grid.freq_axes[axis]) ** order
        return SpectralField(self.grid, coefficients=mult * self.coefficients)

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values)))

    def __repr__(self):
        return f"SpectralField({self.grid!r}, parity={self.parity})"


def transform(field: SpectralField) -> SpectralField:
    """Materialize both representations of a field.

    Kept as a named operation so the round-trip contract has a single owner;
    forward/inverse always go through the grid FFT pair.
    """
    field.values
    field.coefficients
    return field


def l2_inner(u: SpectralField, v: SpectralField) -> complex:
    """Quadrature inner product (u, v) = sum u conj(v) * (2pi/M)^N.

    Equals the volume-weighted Parseval sum (2pi)^N sum uhat conj(vhat).
    """
    if not u.grid.same_as(v.grid):
        raise GridMismatch("l2_inner requires fields on the same grid")
    return complex(np.sum(u.values * np.conj(v.values)) * u.grid.cell_volume)


def spectral_inner(u: SpectralField, v: SpectralField) -> complex:
    """Lattice Parseval pairing sum_xi uhat(xi) conj(vhat(xi))."""
    if not u.grid.same_as(v.grid):
        raise GridMismatch("spectral_inner requires fields on the same grid")
    return complex(np.sum(u.coefficients * np.conj(v.coefficients)))


def l2_norm(u: SpectralField) -> float:
    """Lattice L2 norm sqrt(sum |uhat|^2) (L2 w.r.t. the normalized measure)."""
    return float(np.sqrt(np.sum(np.abs(u.coefficients) ** 2)))


def quad_norm(u: SpectralField) -> float:
    """Physical L2 norm sqrt(Re l2_inner(u, u)) = (2pi)^{N/2} l2_norm(u)."""
    return float(np.sqrt(max(l2_inner(u, u).real, 0.0)))


def hermitian_defect(u: SpectralField) -> float:
    """Relative deviation of uhat from Hermitian symmetry (zero for real fields)."""
    c = u.coefficients
    flipped = c.copy()
    for ax in range(u.grid.dim):
        flipped = np.flip(np.roll(flipped, -1, axis=ax), axis=ax)
    scale = np.max(np.abs(c))
    if scale == 0.0:
        return 0.0
    return float(np.max(np.abs(c - np.conj(flipped))) / scale)


def random_field(grid: TorusGrid, rng, band=None, real: bool = True) -> SpectralField:
    """Seeded random band-limited field.

    band: inclusive |xi| interval (lo, hi); defaults to |xi| <= M/4.
    """
    if band is None:
        band = (0.0, grid.m / 4.0)
    lo, hi = band
    coeff = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    mask = (grid.abs_xi >= lo) & (grid.abs_xi <= hi)
    coeff = np.where(mask, coeff, 0.0)
    if real:
        vals = grid.inverse(coeff).real
        return SpectralField(grid, values=vals, parity="real")
    return SpectralField(grid, coefficients=coeff, parity="complex")


def mode(grid: TorusGrid, k) -> SpectralField:
    """The pure mode e^{i k . x} as a field (k an integer or integer tuple)."""
    if grid.dim == 1 and np.isscalar(k):
        k = (int(k),)
    k = tuple(int(ki) for ki in k)
    coeff = np.zeros(grid.shape, dtype=complex)
    idx = tuple(ki % grid.m for ki in k)
    coeff[idx] = 1.0
    return SpectralField(grid, coefficients=coeff)

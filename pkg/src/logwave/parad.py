"""Paradifferential calculus with a spectral-shift parameter (1-D lattice).

The cutoff psi_mu couples an x-frequency eta to a target frequency xi:

    psi_mu(eta, xi) = chi(2^-mu eta) chi(2^-(mu+2) xi)
                      + sum_{k >= mu+3} chi(2^-(k-3) eta) phi(2^-k xi),

which is 1 near eta = 0 (so T_1 = Id exactly) and kills |eta| >~ gamma + |xi|
once gamma >= 2^{mu+1}.  A symbol a(x, xi) acts through the twisted
convolution

    (T_a u)^(zeta) = sum_{eta + xi = zeta} psi(eta, xi) ahat(eta, xi) uhat(xi),

where ahat is the x-transform of the symbol at fixed xi; output frequencies
falling off the lattice are dropped (their mass is reported on request).
Symbols carry either a dense (x, xi) table or a list of separable components
a(x) g(xi); the separable path only touches the symbol's active x-modes, so
it scales to large grids.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dyadic import CutoffSystem, GammaScale, default_cutoffs, ring_field
from .errors import ConfigError, EllipticityError, GridMismatch
from .grid import SpectralField, TorusGrid, l2_norm, spectral_inner
from .rough import CoefficientField, smooth_in_time
from .spaces import NormSpec, loglog_slope, sobolev_norm


def mu_for_gamma(gamma: float) -> int:
    """Paraproduct start index paired with gamma (gamma ~ 2^{mu+1})."""
    return max(0, int(round(np.log2(gamma))) - 1)


class ParamCutoff:
    """The pair-frequency cutoff psi_mu on a grid's lattice, gamma >= 1."""

    def __init__(self, mu: int, gamma: float, grid: TorusGrid, cutoffs: CutoffSystem | None = None):
        if grid.dim != 1:
            raise ConfigError("parameter calculus is implemented on the 1-D torus")
        if mu < 0:
            raise ConfigError(f"mu must be >= 0, got {mu}")
        if gamma < 1.0:
            raise ConfigError(f"gamma must be >= 1, got {gamma}")
        if 2 ** (mu + 3) > grid.m // 2:
            raise ConfigError(
                f"insufficient lattice headroom: 2^(mu+3)={2**(mu+3)} > M/2={grid.m//2}"
            )
        self.mu = mu
        self.gamma = gamma
        self.grid = grid
        self.cutoffs = cutoffs or default_cutoffs()
        # rings up to the highest scale visible on the doubled lattice
        self.k_top = int(np.ceil(np.log2(grid.m))) + 2
        self._table = None
        self._ratios = None
        self._radial = None

    def _radial_tables(self):
        """Per-ring radial profiles sampled on the integer radii 0..M/2.

        psi is radial in both arguments and every lattice use evaluates it at
        integer radii, so each ring term is two cached lookup vectors.
        """
        if self._radial is None:
            cs = self.cutoffs
            radial = np.arange(self.grid.m // 2 + 1, dtype=float)
            terms = [(cs.chi(radial * 2.0**-self.mu),
                      cs.chi(radial * 2.0 ** -(self.mu + 2)))]
            for k in range(self.mu + 3, self.k_top + 1):
                terms.append((cs.chi(radial * 2.0 ** -(k - 3)),
                              cs.phi(radial * 2.0**-k)))
            self._radial = terms
        return self._radial

    def psi(self, abs_eta, abs_xi) -> np.ndarray:
        """Vectorized psi_mu(|eta|, |xi|) at integer lattice radii."""
        ei = np.rint(np.asarray(abs_eta, dtype=float)).astype(int)
        xi = np.rint(np.asarray(abs_xi, dtype=float)).astype(int)
        out = np.zeros(np.broadcast(ei, xi).shape)
        for eprof, xprof in self._radial_tables():
            out = out + eprof[ei] * xprof[xi]
        return out

    def table(self) -> np.ndarray:
        """Dense psi[eta_idx, xi_idx] in fft order (built lazily)."""
        if self._table is None:
            f = np.abs(self.grid.freqs)
            t = self.psi(f[:, None], f[None, :])
            t.setflags(write=False)
            self._table = t
        return self._table

    def support_ratios(self):
        """Measured critical ratios (eps1, eps2) on the lattice sweep.

        eps1: largest ratio with psi = 1 on |eta| <= eps1 (gamma + |xi|) for
        every xi; eps2: the critical ratio above which psi vanishes, i.e.
        psi = 0 whenever |eta| >= e (gamma + |xi|) for any e > eps2.  The
        cutoff is admissible when 0 < eps1 < eps2 < 1.
        """
        if self._ratios is None:
            radial = np.arange(self.grid.m // 2 + 1, dtype=float)
            xis = np.unique(np.abs(self.grid.freqs))
            eps1 = np.inf
            eps2 = 0.0
            for xi in xis:
                row = self.psi(radial, np.full_like(radial, xi))
                below = np.nonzero(row < 1.0 - 1e-12)[0]
                r1 = radial[below[0] - 1] if below.size and below[0] > 0 else radial[-1]
                above = np.nonzero(row > 1e-12)[0]
                r2 = radial[above[-1]] if above.size else 0.0
                eps1 = min(eps1, r1 / (self.gamma + xi))
                eps2 = max(eps2, r2 / (self.gamma + xi))
            self._ratios = (float(eps1), float(eps2))
        return self._ratios


def make_cutoff(mu: int, gamma: float, grid: TorusGrid, cutoffs=None) -> ParamCutoff:
    return ParamCutoff(mu, gamma, grid, cutoffs)


class ParamSymbol:
    """A symbol a(t, x, xi, gamma) tabulated for the twisted convolution.

    Exactly one of `table` (dense (M_x, M_xi) samples, xi in fft order) or
    `components` (list of (x_samples | None, xi_multiplier) separable parts)
    is set.  `order_m`/`log_order_delta` declare the growth class.
    """

    def __init__(self, cutoff: ParamCutoff, order_m=0.0, log_order_delta=0.0,
                 table=None, components=None, name=""):
        if (table is None) == (components is None):
            raise ConfigError("supply exactly one of table or components")
        self.cutoff = cutoff
        self.grid = cutoff.grid
        self.order_m = order_m
        self.log_order_delta = log_order_delta
        self.name = name
        m = self.grid.m
        if table is not None:
            table = np.asarray(table, dtype=complex)
            if table.shape != (m, m):
                raise GridMismatch(f"symbol table shape {table.shape} != ({m},{m})")
        self.table = table
        self.components = components
        self._twisted = None
        self._matrix = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_x_function(cls, cutoff, x_values, xi_multiplier=None, order_m=0.0,
                        log_order_delta=0.0, name=""):
        g = np.ones(cutoff.grid.m, dtype=complex) if xi_multiplier is None else \
            np.asarray(xi_multiplier, dtype=complex)
        xv = np.asarray(x_values, dtype=complex)
        return cls(cutoff, order_m, log_order_delta,
                   components=[(xv, g)], name=name)

    @classmethod
    def from_multiplier(cls, cutoff, xi_multiplier, order_m=0.0, log_order_delta=0.0, name=""):
        g = np.asarray(xi_multiplier, dtype=complex)
        return cls(cutoff, order_m, log_order_delta, components=[(None, g)], name=name)

    @classmethod
    def constant(cls, cutoff, value=1.0):
        return cls.from_multiplier(cutoff, np.full(cutoff.grid.m, value, dtype=complex),
                                   order_m=0.0, name="const")

    def product(self, other: "ParamSymbol") -> "ParamSymbol":
        """Pointwise symbol product ab (order adds)."""
        if self.components is not None and other.components is not None:
            comps = []
            for xa, ga in self.components:
                for xb, gb in other.components:
                    if xa is None:
                        xv = xb
                    elif xb is None:
                        xv = xa
                    else:
                        xv = xa * xb
                    comps.append((xv, ga * gb))
            return ParamSymbol(self.cutoff, self.order_m + other.order_m,
                               self.log_order_delta + other.log_order_delta,
                               components=comps, name=f"({self.name})({other.name})")
        ta = self.dense_table()
        tb = other.dense_table()
        return ParamSymbol(self.cutoff, self.order_m + other.order_m,
                           self.log_order_delta + other.log_order_delta,
                           table=ta * tb, name=f"({self.name})({other.name})")

    def conjugate(self) -> "ParamSymbol":
        if self.components is not None:
            comps = [(None if xv is None else np.conj(xv), np.conj(g))
                     for xv, g in self.components]
            return ParamSymbol(self.cutoff, self.order_m, self.log_order_delta,
                               components=comps, name=f"conj({self.name})")
        return ParamSymbol(self.cutoff, self.order_m, self.log_order_delta,
                           table=np.conj(self.table), name=f"conj({self.name})")

    # -- spectral machinery --------------------------------------------------

    def dense_table(self) -> np.ndarray:
        if self.table is not None:
            return self.table
        m = self.grid.m
        t = np.zeros((m, m), dtype=complex)
        for xv, g in self.components:
            xcol = np.ones(m, dtype=complex) if xv is None else xv
            t += xcol[:, None] * g[None, :]
        return t

    def twisted_spectrum(self) -> np.ndarray:
        """psi(eta, xi) * ahat(eta, xi): rows eta (fft order), columns xi."""
        if self._twisted is None:
            a_hat = np.fft.fft(self.dense_table(), axis=0) / self.grid.m
            tw = self.cutoff.table() * a_hat
            tw.setflags(write=False)
            self._twisted = tw
        return self._twisted

    def classical_symbol(self) -> np.ndarray:
        """sigma_a(x, xi): the x-smoothed symbol (inverse transform in eta)."""
        return np.fft.ifft(self.twisted_spectrum(), axis=0) * self.grid.m

    def _active_modes(self, x_values):
        m = self.grid.m
        if x_values is None:
            return [(0, 1.0 + 0.0j)]
        ahat = np.fft.fft(x_values) / m
        tol = 1e-13 * max(np.max(np.abs(ahat)), 1e-300)
        etas = np.nonzero(np.abs(ahat) > tol)[0]
        out = []
        for idx in etas:
            eta = int(idx if idx < m // 2 else idx - m)
            out.append((eta, complex(ahat[idx])))
        return out

    def apply(self, u: SpectralField) -> SpectralField:
        """T_a u by twisted convolution; off-lattice output mass is dropped."""
        if not u.grid.same_as(self.grid):
            raise GridMismatch("symbol tabulated on a different grid")
        if self.components is not None:
            return self._apply_sparse(u)
        return self._apply_dense(u)

    def _apply_sparse(self, u: SpectralField) -> SpectralField:
        m = self.grid.m
        us = np.fft.fftshift(u.coefficients)
        xi_vals = np.fft.fftshift(self.grid.freqs)
        out = np.zeros(m, dtype=complex)
        for xv, g in self.components:
            gs = np.fft.fftshift(g)
            for eta, coef in self._active_modes(xv):
                lo = max(0, -eta)
                hi = min(m, m - eta)
                if lo >= hi:
                    continue
                sl = slice(lo, hi)
                psi = self.cutoff.psi(abs(eta), np.abs(xi_vals[sl]))
                out[lo + eta : hi + eta] += coef * psi * gs[sl] * us[sl]
        return SpectralField(self.grid, coefficients=np.fft.ifftshift(out))

    def operator_matrix(self) -> np.ndarray:
        """Explicit twisted-convolution matrix W[zeta, xi] in shifted frequency order.

        O(M^2) memory; intended for modest grids (adjoint checks use M <= 256).
        """
        if self._matrix is None:
            m = self.grid.m
            tw = np.fft.fftshift(self.twisted_spectrum(), axes=(0, 1))
            zi = np.arange(m)[:, None]
            xi = np.arange(m)[None, :]
            ei = zi - xi + m // 2
            valid = (ei >= 0) & (ei < m)
            w = np.where(valid, tw[np.clip(ei, 0, m - 1), xi], 0.0)
            w.setflags(write=False)
            self._matrix = w
        return self._matrix

    def _apply_dense(self, u: SpectralField) -> SpectralField:
        us = np.fft.fftshift(u.coefficients)
        out = self.operator_matrix() @ us
        return SpectralField(self.grid, coefficients=np.fft.ifftshift(out))

    def adjoint_apply(self, u: SpectralField) -> SpectralField:
        """(T_a)^* u via the conjugate transpose of the explicit matrix."""
        if self.components is not None:
            dense = ParamSymbol(self.cutoff, self.order_m, self.log_order_delta,
                                table=self.dense_table(), name=self.name)
            return dense.adjoint_apply(u)
        us = np.fft.fftshift(u.coefficients)
        out = self.operator_matrix().conj().T @ us
        return SpectralField(self.grid, coefficients=np.fft.ifftshift(out))

    def aliasing_mass(self, u: SpectralField) -> float:
        """l1 bound on the contributions dropped beyond the lattice."""
        m = self.grid.m
        us = np.abs(np.fft.fftshift(u.coefficients))
        tw = np.abs(np.fft.fftshift(self.twisted_spectrum(), axes=(0, 1)))
        total = 0.0
        for p in range(m):
            xi = p - m // 2
            lo_eta = m // 2 - p  # zeta < -M/2
            hi_eta = m + m // 2 - p  # zeta >= M/2 (index above)
            col = tw[:, p]
            mass = np.sum(col[:max(lo_eta, 0)]) + np.sum(col[min(hi_eta, m):])
            total += float(mass * us[p])
        return total


def apply_parad(a: ParamSymbol, u: SpectralField) -> SpectralField:
    """T_a u (named entry point; dispatches on the symbol's representation)."""
    return a.apply(u)


def apply_twisted_columns(cutoff: ParamCutoff, table_cols: np.ndarray,
                          col_idx_fft: np.ndarray, u: SpectralField) -> SpectralField:
    """Twisted convolution restricted to the given input-frequency columns.

    `table_cols` holds symbol samples a(x_i, xi_c) for the fft-order column
    indices `col_idx_fft`; frequencies of u outside those columns are ignored.
    Exact for block inputs supported on the columns, at O(M * n_cols) cost.
    """
    grid = cutoff.grid
    m = grid.m
    xi_vals = grid.freqs[col_idx_fft]
    ahat = np.fft.fft(np.asarray(table_cols, dtype=complex), axis=0) / m
    etas = np.abs(grid.freqs)
    psi_cols = cutoff.psi(etas[:, None], np.abs(xi_vals)[None, :])
    tw = np.fft.fftshift(psi_cols * ahat, axes=0)  # rows: eta + M/2
    uc = u.coefficients[col_idx_fft]
    out = np.zeros(m, dtype=complex)
    for c, xi in enumerate(xi_vals):
        xi = int(xi)
        if xi >= 0:
            out[xi:] += tw[: m - xi, c] * uc[c]
        else:
            out[: m + xi] += tw[-xi:, c] * uc[c]
    return SpectralField(grid, coefficients=np.fft.ifftshift(out))


# -- symbols from coefficients ------------------------------------------------


class AlphaSymbols:
    """The order-0 symbol alpha(t,x,xi) = sqrt(g^2 + a(t,x) xi^2)/sqrt(g^2+xi^2)
    built from (mollified) coefficients, with its powers and time derivative.
    """

    def __init__(self, a: CoefficientField, gamma: float, t: float, cutoff: ParamCutoff):
        if a.dim != 1:
            raise ConfigError("alpha symbols implemented for dim 1")
        grid = cutoff.grid
        self.cutoff = cutoff
        self.gamma = float(gamma)
        a_val = np.real(a.entry_values(0, 0, t, grid))
        if np.min(a_val) <= 0.0:
            raise EllipticityError("coefficient samples lose positivity", t=t)
        a_dt = np.real(a.entry_values(0, 0, t, grid, dt_order=1))
        xi2 = grid.freqs**2
        lam = np.sqrt(self.gamma**2 + xi2)
        q = self.gamma**2 + a_val[:, None] * xi2[None, :]
        self.alpha = np.sqrt(q) / lam[None, :]
        self.dt_alpha = a_dt[:, None] * xi2[None, :] / (2.0 * np.sqrt(q) * lam[None, :])
        self.lam = lam

    def power(self, p: float, lambda_power: float = 0.0, name="") -> ParamSymbol:
        """alpha^p Lambda^q as a dense symbol of order q."""
        table = self.alpha**p * (self.lam ** lambda_power)[None, :]
        return ParamSymbol(self.cutoff, order_m=lambda_power, table=table,
                           name=name or f"alpha^{p}L^{lambda_power}")

    def dt_of_inv_sqrt(self) -> ParamSymbol:
        """d/dt (alpha^{-1/2}) from the analytically differentiated symbol."""
        table = -0.5 * self.alpha**-1.5 * self.dt_alpha
        return ParamSymbol(self.cutoff, order_m=0.0, table=table, name="dt(alpha^-1/2)")

    def bounds(self):
        return float(np.min(self.alpha)), float(np.max(self.alpha))


def alpha_symbol(a: CoefficientField, gamma: float, t: float, cutoff: ParamCutoff) -> ParamSymbol:
    """The order-0 symbol itself (see AlphaSymbols for derived powers)."""
    return AlphaSymbols(a, gamma, t, cutoff).power(1.0)


def lambda_multiplier(cutoff: ParamCutoff, power: float = 1.0) -> ParamSymbol:
    lam = GammaScale(cutoff.gamma).lambda_weight(np.abs(cutoff.grid.freqs))
    return ParamSymbol.from_multiplier(cutoff, lam**power, order_m=power, name=f"Lambda^{power}")


# -- probes -------------------------------------------------------------------


@dataclass
class KernelReport:
    """L1 bounds of the smoothing kernel G^psi against the declared decay."""

    xi_samples: tuple
    ratio_plain: dict  # (|alpha|, |beta|) -> list of ratios over xi
    ratio_weighted: dict
    moment_defect: float
    boundary_mass_fraction: float

    def spread(self, which="plain"):
        """max/min of each ratio family, over the nonzero ratios.

        Derivative kernels vanish identically on the low-frequency plateau
        (psi there is constant in xi), so exact zeros certify the upper bound
        rather than entering the two-sided constancy measurement.
        """
        table = self.ratio_plain if which == "plain" else self.ratio_weighted
        out = {}
        for ab, r in table.items():
            r = np.asarray(r)
            live = r[r > 1e-12 * np.max(r)] if np.max(r) > 0 else r
            out[ab] = float(np.max(live) / np.min(live)) if live.size else 0.0
        return out


def kernel_bounds_probe(cutoff: ParamCutoff, xi_samples) -> KernelReport:
    """Measure ||d_x^beta d_xi^alpha G^psi(., xi)||_L1 against the kernel bounds."""
    grid = cutoff.grid
    m = grid.m
    gamma = cutoff.gamma
    x = grid.axis_points()
    dist = np.minimum(x, 2.0 * np.pi - x)
    with np.errstate(divide="ignore"):
        weight = dist * np.log(2.0 + 1.0 / np.where(dist > 0, dist, 1.0))
    weight[dist == 0.0] = 0.0
    etas = grid.freqs

    def g_kernel(xi, beta):
        psi_row = cutoff.psi(np.abs(etas), np.full(m, abs(xi)))
        vals = psi_row * (1j * etas) ** beta
        return np.fft.ifft(vals) * m / (2.0 * np.pi)

    ratio_plain = {}
    ratio_weighted = {}
    moment = 0.0
    boundary_frac = 0.0
    dx = grid.spacing
    near = dist >= 0.9 * np.pi
    for ab in [(0, 0), (1, 0), (0, 1), (1, 1)]:
        al, be = ab
        rp, rw = [], []
        for xi in xi_samples:
            if al == 0:
                g = g_kernel(xi, be)
            else:  # centered lattice difference in xi
                g = (g_kernel(xi + 1, be) - g_kernel(xi - 1, be)) / 2.0
            l1 = float(np.sum(np.abs(g)) * dx)
            l1w = float(np.sum(weight * np.abs(g)) * dx)
            scale = (gamma + abs(xi)) ** (-al + be)
            rp.append(l1 / scale)
            rw.append(l1w / (scale / (gamma + abs(xi)) * np.log(1.0 + gamma + abs(xi))))
            if ab == (0, 0):
                boundary_frac = max(
                    boundary_frac, float(np.sum(np.abs(g[near])) * dx / max(l1, 1e-300))
                )
            if ab == (0, 1) or ab == (0, 0):
                pass
        ratio_plain[ab] = rp
        ratio_weighted[ab] = rw
    # moment identity for the x-derivative kernel (relative to its L1 mass)
    for xi in xi_samples:
        g1 = g_kernel(xi, 1)
        l1 = float(np.sum(np.abs(g1)) * dx)
        moment = max(moment, float(np.abs(np.sum(g1) * dx)) / max(l1, 1e-300))
    return KernelReport(tuple(xi_samples), ratio_plain, ratio_weighted, moment, boundary_frac)


@dataclass
class GammaSelection:
    ok: bool
    gamma: float
    mu: int
    lambda0: float
    margins: dict = field(default_factory=dict)
    worst: dict = field(default_factory=dict)
    trace: list = field(default_factory=list)


def choose_gamma_mu(
    a: CoefficientField,
    grid: TorusGrid,
    probes=None,
    gammas=(1, 2, 4, 8, 16, 32, 64),
    t_samples=(0.0,),
    nu_samples=(0, 3, 6),
    margin: float = 0.05,
    seed: int = 7,
) -> GammaSelection:
    """Smallest power-of-two gamma whose operator lower bounds hold on all probes.

    Requires, with margin, ||T_{alpha^-1/2} w|| >= (lambda0/2) ||w|| and
    ||T_{alpha^1/2 Lambda} w|| >= (lambda0/2) ||w||_{H^1} for every probe w
    and every sampled (t, nu) with eps = 2^-nu.
    """
    lam0 = a.lambda0
    if probes is None:
        rng = np.random.default_rng(seed)
        top = int(np.log2(grid.m)) - 3
        probes = [ring_field(grid, j, rng) for j in range(0, top + 1, 2)]
        from .grid import random_field

        probes.append(random_field(grid, rng))
    h1 = NormSpec(1.0)
    trace = []
    worst = {}
    for gamma in gammas:
        mu = mu_for_gamma(gamma)
        if 2 ** (mu + 3) > grid.m // 2:
            break
        cutoff = make_cutoff(mu, gamma, grid)
        ok = True
        worst_margin = np.inf
        for nu in nu_samples:
            eps = 2.0**-nu
            a_eps = smooth_in_time(a, eps) if a.epsilon is None else a
            for t in t_samples:
                fam = AlphaSymbols(a_eps, gamma, t, cutoff)
                t_low = fam.power(-0.5)
                t_high = fam.power(0.5, lambda_power=1.0)
                for idx, w in enumerate(probes):
                    m1 = l2_norm(t_low.apply(w)) / (0.5 * lam0 * l2_norm(w))
                    m2 = l2_norm(t_high.apply(w)) / (0.5 * lam0 * sobolev_norm(w, h1))
                    mm = min(m1, m2)
                    if mm < worst_margin:
                        worst_margin = mm
                        worst = {"gamma": gamma, "nu": nu, "t": t, "probe": idx, "margin": mm}
                    if mm < 1.0 + margin:
                        ok = False
        trace.append({"gamma": gamma, "mu": mu, "worst_margin": worst_margin, "ok": ok})
        if ok:
            return GammaSelection(True, float(gamma), mu, lam0,
                                  margins={"worst": worst_margin}, worst=worst, trace=trace)
    return GammaSelection(False, float("nan"), -1, lam0, worst=worst, trace=trace)


def positivity_probe(sym: ParamSymbol, probes, gamma: float) -> float:
    """min over probes of Re(T_a u, u) / ||u||^2 in the H^{m/2}_gamma pairing."""
    spec = NormSpec(sym.order_m / 2.0, 0.0, gamma)
    worst = np.inf
    for u in probes:
        num = spectral_inner(sym.apply(u), u).real
        den = sobolev_norm(u, spec) ** 2
        worst = min(worst, num / den)
    return float(worst)


@dataclass
class SlopeReport:
    js: tuple
    ratios: np.ndarray  # mean ratio per ring
    slope: float
    log_prefactor: float  # c in ratio ~ c (j+1) 2^{slope j}, fitted at declared order

    def table(self):
        return {int(j): float(r) for j, r in zip(self.js, self.ratios)}


def _ring_probes(grid, j, count, rng, cutoffs=None):
    return [ring_field(grid, j, rng, cutoffs) for _ in range(count)]


def remainder_probe(
    a: ParamSymbol,
    b: ParamSymbol,
    js,
    probes_per_ring: int = 6,
    seed: int = 11,
    declared_order: float | None = None,
) -> SlopeReport:
    """Composition remainder R = T_a T_b - T_{ab} measured on ring probes.

    Returns the log2 slope of ||R u|| / ||u|| against the ring index, which the
    symbolic calculus bounds by m + m' - 1 (up to one logarithm, reported as a
    (j+1)-linear prefactor at the declared order).
    """
    grid = a.grid
    rng = np.random.default_rng(seed)
    ab = a.product(b)
    js = tuple(int(j) for j in js)
    means = []
    for j in js:
        vals = []
        for u in _ring_probes(grid, j, probes_per_ring, rng):
            ru = a.apply(b.apply(u)) - ab.apply(u)
            vals.append(l2_norm(ru) / l2_norm(u))
        means.append(float(np.mean(vals)))
    ratios = np.array(means)
    if np.all(ratios > 0) and len(js) >= 2:
        slope = float(np.polyfit(js, np.log2(ratios), 1)[0])
    else:
        slope = -np.inf
    order = declared_order if declared_order is not None else a.order_m + b.order_m - 1.0
    pref = [r / ((j + 1) * 2.0 ** (order * j)) for j, r in zip(js, ratios)]
    return SlopeReport(js, ratios, slope, float(np.mean(pref)))


def adjoint_defect_probe(
    a: ParamSymbol, js, probes_per_ring: int = 6, seed: int = 13
) -> SlopeReport:
    """Defect (T_a u, v) - (u, T_{abar} v) on ring probes; order m - 1 + log."""
    grid = a.grid
    rng = np.random.default_rng(seed)
    abar = a.conjugate()
    js = tuple(int(j) for j in js)
    means = []
    for j in js:
        vals = []
        for _ in range(probes_per_ring):
            u = ring_field(grid, j, rng)
            v = ring_field(grid, j, rng)
            d = spectral_inner(a.apply(u), v) - spectral_inner(u, abar.apply(v))
            vals.append(abs(d) / (l2_norm(u) * l2_norm(v)))
        means.append(float(np.mean(vals)))
    ratios = np.array(means)
    if np.all(ratios > 0) and len(js) >= 2:
        slope = float(np.polyfit(js, np.log2(ratios), 1)[0])
    else:
        slope = -np.inf
    order = a.order_m - 1.0
    pref = [r / ((j + 1) * 2.0 ** (order * j)) for j, r in zip(js, ratios)]
    return SlopeReport(js, ratios, slope, float(np.mean(pref)))


@dataclass
class SymbolBoundReport:
    """Six ratio families from the mollified-symbol derivative estimates."""

    eps: tuple
    xi_samples: tuple
    families: dict  # name -> array (n_eps, n_xi) of measured/bound ratios
    eps_slopes: dict
    xi_slopes: dict


def symbol_derivative_bounds(
    a: CoefficientField,
    cutoff: ParamCutoff,
    eps_list=(2.0**-3, 2.0**-5, 2.0**-7, 2.0**-9),
    xi_samples=(4, 16, 64),
    t: float = 0.5,
) -> SymbolBoundReport:
    """Finite-difference checks of the classical-symbol bounds for a_eps.

    The symbol of the x-function a_eps(t, .) is sigma(x, xi) =
    ifft_eta(psi(eta, xi) ahat(eta)); xi-derivatives are centered lattice
    differences, x-derivatives exact multipliers.  Each measured sup is
    normalized by its declared bound (m = 0), so flat-in-(eps, xi) ratio
    families certify the estimates.
    """
    grid = cutoff.grid
    gamma = cutoff.gamma
    m = grid.m
    etas = grid.freqs

    def sigma(xvals, xi, dx=0, dxi=0):
        ahat = np.fft.fft(np.asarray(xvals, complex)) / m

        def at(xi0):
            psi_row = cutoff.psi(np.abs(etas), np.full(m, abs(float(xi0))))
            mult = (1j * etas) ** dx
            return np.fft.ifft(psi_row * mult * ahat) * m

        if dxi == 0:
            return at(xi)
        return (at(xi + 1) - at(xi - 1)) / 2.0

    names = ["a_xi", "a_x", "dt_flat", "dt_x", "dtt_flat", "dtt_x"]
    fams = {n: np.zeros((len(eps_list), len(xi_samples))) for n in names}
    for ie, eps in enumerate(eps_list):
        a_eps = smooth_in_time(a, eps) if a.epsilon is None else a
        f0 = a_eps.entry_values(0, 0, t, grid, 0)
        f1 = a_eps.entry_values(0, 0, t, grid, 1)
        f2 = a_eps.entry_values(0, 0, t, grid, 2)
        log_eps = np.log(1.0 + gamma + 1.0 / eps)
        for ix, xi in enumerate(xi_samples):
            gx = gamma + abs(xi)
            log_xi = np.log(1.0 + gx)
            fams["a_xi"][ie, ix] = np.max(np.abs(sigma(f0, xi, dxi=1))) * gx
            fams["a_x"][ie, ix] = np.max(np.abs(sigma(f0, xi, dx=1))) / log_xi
            fams["dt_flat"][ie, ix] = np.max(np.abs(sigma(f1, xi))) / log_eps**2
            fams["dt_x"][ie, ix] = np.max(np.abs(sigma(f1, xi, dx=1))) / (log_xi / eps)
            fams["dtt_flat"][ie, ix] = np.max(np.abs(sigma(f2, xi))) / (log_eps / eps)
            fams["dtt_x"][ie, ix] = np.max(np.abs(sigma(f2, xi, dx=1))) / (log_xi / eps**2)
    eps_arr = np.asarray(eps_list, float)
    xi_arr = np.asarray(xi_samples, float)
    eps_slopes = {}
    xi_slopes = {}
    for n, f in fams.items():
        rows = f.max(axis=1)
        cols = f.max(axis=0)
        eps_slopes[n] = loglog_slope(eps_arr, rows) if np.all(rows > 0) else 0.0
        xi_slopes[n] = loglog_slope(1.0 + gamma + xi_arr, cols) if np.all(cols > 0) else 0.0
    return SymbolBoundReport(tuple(eps_list), tuple(xi_samples), fams, eps_slopes, xi_slopes)

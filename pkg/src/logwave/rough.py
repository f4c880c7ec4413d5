"""Synthetic rough coefficients and their time mollification.

A coefficient field is a symmetric N x N matrix a_ij(t, x) stored analytically
as a constant positive-definite base plus separable lacunary series

    a_ij(t, x) = B_ij + sum_k A_k cos(2^k t + theta_k) + sum_k C_k cos(2^k x_e + phi_k),

with A_k on the log-Zygmund scale (k+1) 2^-k and C_k on the log-Lipschitz
scale 2^-k.  Everything downstream evaluates the series on demand, so no
interpolation error enters the solver.

Time mollification by an even unit-mass kernel rho_eps acts term-by-term:
convolving cos(w t) with rho_eps multiplies it by the cosine transform
rhohat(w eps), so smoothed fields and their exact time derivatives stay in
series form.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from .errors import ConfigError, DomainError, EllipticityError
from .grid import TorusGrid
from .spaces import ll_seminorm, lz_seminorm


def _rho_unnormalized(s):
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    inside = np.abs(s) < 1.0
    out[inside] = np.exp(-1.0 / (1.0 - s[inside] ** 2))
    return out


_RHO_MASS = quad(lambda s: float(_rho_unnormalized(s)), -1.0, 1.0, epsabs=1e-13)[0]


def rho_profile(s):
    """Even C-infinity kernel supported on [-1, 1], 0 <= rho <= 1, unit mass."""
    return _rho_unnormalized(s) / _RHO_MASS


class MollifierKernel:
    """Mollifier rho_eps(t) = rho(t/eps)/eps with precomputed moments."""

    def __init__(self, epsilon: float):
        if not 0.0 < epsilon <= 1.0:
            raise ConfigError(f"epsilon must lie in (0, 1], got {epsilon}")
        self.epsilon = epsilon
        self.rho_profile = rho_profile
        nodes = np.linspace(-1.0, 1.0, 2001)
        even_defect = np.max(np.abs(rho_profile(nodes) - rho_profile(-nodes)))
        if even_defect > 1e-14:
            raise ConfigError("kernel evenness violated")
        mass = quad(lambda s: float(rho_profile(s)), -1.0, 1.0, epsabs=1e-12)[0]
        if abs(mass - 1.0) > 1e-10:
            raise ConfigError(f"kernel mass {mass} != 1")
        self.second_moment = quad(
            lambda s: s * s * float(rho_profile(s)), -1.0, 1.0, epsabs=1e-12
        )[0]
        self._cos_transform_cache: dict = {}

    def cos_transform(self, omega: float) -> float:
        """rhohat(omega) = int rho(s) cos(omega s) ds, by dense trapezoid.

        The integrand is smooth and compactly supported, so the uniform
        trapezoid rule converges superalgebraically once the oscillation is
        resolved; the node count scales with omega.
        """
        key = round(float(omega), 12)
        if key not in self._cos_transform_cache:
            n = int(min(max(4096, 16 * abs(omega)), 2**21))
            s = np.linspace(-1.0, 1.0, n + 1)
            vals = rho_profile(s) * np.cos(omega * s)
            self._cos_transform_cache[key] = float(np.trapezoid(vals, s))
        return self._cos_transform_cache[key]


@dataclass(frozen=True)
class SeriesTerm:
    amplitude: float
    freq: float
    phase: float = 0.0

    def eval(self, t, dt_order: int = 0, damping: float = 1.0):
        """amplitude * damping * d^n/dt^n cos(2^k t + phase)."""
        w = self.freq
        return (
            self.amplitude
            * damping
            * w**dt_order
            * np.cos(w * np.asarray(t, dtype=float) + self.phase + dt_order * np.pi / 2.0)
        )


@dataclass
class EntrySeries:
    base: float
    t_terms: list = field(default_factory=list)
    x_terms: list = field(default_factory=list)  # (SeriesTerm, axis)


@dataclass
class CoefficientProfile:
    """Recipe for make_coefficients."""

    dim: int = 1
    base: float | np.ndarray = 2.0
    lz_depth: int = 12
    ll_depth: int = 7
    amp_t: float = 0.25
    amp_x: float = 0.25
    seed: int | None = None
    time_window: tuple = (0.0, 4.0)
    x_freq_style: str = "dyadic"  # or "ring": generic frequency inside each half-ring


class CoefficientField:
    """Symmetric matrix coefficient with hyperbolicity and modulus metadata."""

    def __init__(self, dim, entries, time_window, kernel=None, epsilon=None):
        self.dim = dim
        self.entries = entries  # dict[(i, j)] -> EntrySeries, i <= j
        self.time_window = tuple(time_window)
        self.kernel = kernel
        self.epsilon = epsilon  # None = raw coefficients
        self._x_cache: dict = {}
        self._moduli = None
        self.lambda0, self.Lambda0, self._worst = self._ellipticity_sweep()
        if self.lambda0 <= 0.0:
            t_bad, x_bad, xi_bad = self._worst
            raise EllipticityError(
                f"coefficient loses ellipticity: min eigenvalue {self.lambda0:.3e} "
                f"near t={t_bad:.4f}, x={x_bad}, xi={xi_bad}",
                t=t_bad,
                x=x_bad,
                xi=xi_bad,
            )

    # -- evaluation ---------------------------------------------------------

    def _damping(self, term: SeriesTerm) -> float:
        if self.epsilon is None:
            return 1.0
        return self.kernel.cos_transform(term.freq * self.epsilon)

    def entry_t_part(self, i, j, t, dt_order: int = 0):
        e = self.entries[(min(i, j), max(i, j))]
        out = np.zeros_like(np.asarray(t, dtype=float))
        for term in e.t_terms:
            out = out + term.eval(t, dt_order, self._damping(term))
        if dt_order == 0:
            out = out + e.base
        return out

    def entry_x_part(self, i, j, grid: TorusGrid) -> np.ndarray:
        key = (min(i, j), max(i, j), grid.dim, grid.m)
        if key not in self._x_cache:
            e = self.entries[key[:2]]
            nodes = grid.nodes()
            out = np.zeros(grid.shape)
            for term, axis in e.x_terms:
                out = out + term.amplitude * np.cos(term.freq * nodes[axis] + term.phase)
            out.setflags(write=False)
            self._x_cache[key] = out
        return self._x_cache[key]

    def entry_values(self, i, j, t: float, grid: TorusGrid, dt_order: int = 0):
        """Samples of d^n/dt^n a_ij(t, .) on the grid (x part is t-independent)."""
        tpart = self.entry_t_part(i, j, np.asarray(t, float), dt_order)
        if dt_order > 0:
            return np.broadcast_to(tpart, grid.shape).copy()
        return tpart + self.entry_x_part(i, j, grid)

    def matrix_values(self, t: float, grid: TorusGrid, dt_order: int = 0):
        """dim x dim nested list of sample arrays at time t."""
        return [
            [self.entry_values(i, j, t, grid, dt_order) for j in range(self.dim)]
            for i in range(self.dim)
        ]

    # -- structure ----------------------------------------------------------

    def _fine_t_grid(self, n_min: int = 4096) -> np.ndarray:
        top = max(
            [term.freq for e in self.entries.values() for term in e.t_terms], default=1.0
        )
        n = max(n_min, 8 * int(2 ** np.ceil(np.log2(top))))
        return np.arange(n) * (2.0 * np.pi / n)

    def _fine_x_grid(self, n_min: int = 1024) -> np.ndarray:
        top = max(
            [term.freq for e in self.entries.values() for term, _ in e.x_terms], default=1.0
        )
        n = max(n_min, 8 * int(2 ** np.ceil(np.log2(top))))
        return np.arange(n) * (2.0 * np.pi / n)

    def _ellipticity_sweep(self):
        """Eigenvalue extremes over sampled (t, x); exact for the separable series."""
        tg = self._fine_t_grid()
        if self.dim == 1:
            e = self.entries[(0, 0)]
            tvals = self.entry_t_part(0, 0, tg)
            xg = self._fine_x_grid()
            xvals = np.zeros_like(xg)
            for term, _ in e.x_terms:
                xvals += term.amplitude * np.cos(term.freq * xg + term.phase)
            lo = float(np.min(tvals) + np.min(xvals))
            hi = float(np.max(tvals) + np.max(xvals))
            i_t = int(np.argmin(tvals))
            i_x = int(np.argmin(xvals))
            return lo, hi, (float(tg[i_t]), (float(xg[i_x]),), (1.0,))
        # dim == 2: coarse joint sweep with closed-form symmetric eigenvalues
        tg = tg[:: max(1, len(tg) // 512)]
        n_x = 64
        xs = np.arange(n_x) * (2.0 * np.pi / n_x)
        x0, x1 = np.meshgrid(xs, xs, indexing="ij")
        lo, hi = np.inf, -np.inf
        worst = (0.0, (0.0, 0.0), (1.0, 0.0))
        for t in tg:
            a00 = self._sample_entry(0, 0, t, (x0, x1))
            a01 = self._sample_entry(0, 1, t, (x0, x1))
            a11 = self._sample_entry(1, 1, t, (x0, x1))
            half_tr = 0.5 * (a00 + a11)
            disc = np.sqrt(0.25 * (a00 - a11) ** 2 + a01**2)
            lam_min = half_tr - disc
            lam_max = half_tr + disc
            if float(np.min(lam_min)) < lo:
                lo = float(np.min(lam_min))
                idx = np.unravel_index(np.argmin(lam_min), lam_min.shape)
                worst = (float(t), (float(x0[idx]), float(x1[idx])), (1.0, 0.0))
            hi = max(hi, float(np.max(lam_max)))
        return lo, hi, worst

    def _sample_entry(self, i, j, t, nodes):
        e = self.entries[(min(i, j), max(i, j))]
        out = np.full(nodes[0].shape, e.base + float(self.entry_t_part(i, j, t) - e.base))
        for term, axis in e.x_terms:
            out = out + term.amplitude * np.cos(term.freq * nodes[axis] + term.phase)
        return out

    def measure_moduli(self, max_samples: int = 2**14):
        """Measured LZ-in-t and LL-in-x seminorms (the constant K0).

        Grid suprema are certified lower bounds at any resolution; the sample
        count is capped so deep series stay affordable (the pair loop is
        quadratic in the resolution).
        """
        if self._moduli is None:
            tg = self._fine_t_grid()
            xg = self._fine_x_grid()
            tg = tg[:: max(1, len(tg) // max_samples)]
            xg = xg[:: max(1, len(xg) // max_samples)]
            h_t = 2.0 * np.pi / len(tg)
            h_x = 2.0 * np.pi / len(xg)
            lz_t = 0.0
            ll_x = 0.0
            for (i, j), e in self.entries.items():
                tvals = self.entry_t_part(i, j, tg)
                lz_t = max(lz_t, lz_seminorm(tvals, h_t).seminorm)
                xvals = np.zeros_like(xg)
                for term, _ in e.x_terms:
                    xvals += term.amplitude * np.cos(term.freq * xg + term.phase)
                ll_x = max(ll_x, ll_seminorm(xvals, h_x).seminorm)
            self._moduli = {"lz_t": lz_t, "ll_x": ll_x, "K0": max(lz_t, ll_x)}
        return self._moduli

    @property
    def K0(self) -> float:
        return self.measure_moduli()["K0"]


def make_coefficients(profile: CoefficientProfile) -> CoefficientField:
    """Realize a strictly hyperbolic LZ-in-t / LL-in-x coefficient field."""
    dim = profile.dim
    base = np.atleast_2d(np.asarray(profile.base, dtype=float))
    if base.shape == (1, 1) and dim == 2:
        base = base[0, 0] * np.eye(2)
    if base.shape != (dim, dim):
        raise ConfigError(f"base matrix shape {base.shape} incompatible with dim {dim}")
    if np.max(np.abs(base - base.T)) > 0.0:
        raise ConfigError("base matrix must be symmetric")
    if np.min(np.linalg.eigvalsh(base)) <= 0.0:
        raise ConfigError("base matrix must be positive definite")

    rng = np.random.default_rng(profile.seed) if profile.seed is not None else None

    def phase():
        return float(rng.uniform(0.0, 2.0 * np.pi)) if rng is not None else 0.0

    def x_freq(k):
        if profile.x_freq_style == "dyadic" or rng is None:
            return 2.0**k
        return float(rng.integers(2 ** (k - 1) + 1, max(2 ** (k - 1) + 2, 2**k)))

    entries = {}
    for i in range(dim):
        for j in range(i, dim):
            e = EntrySeries(base=float(base[i, j]))
            if i == j:
                for k in range(1, profile.lz_depth + 1):
                    e.t_terms.append(
                        SeriesTerm(profile.amp_t * (k + 1) * 2.0**-k, 2.0**k, phase())
                    )
                for k in range(1, profile.ll_depth + 1):
                    axis = k % dim
                    e.x_terms.append((SeriesTerm(profile.amp_x * 2.0**-k, x_freq(k), phase()), axis))
            entries[(i, j)] = e
    return CoefficientField(dim, entries, profile.time_window)


def constant_coefficients(value: float = 1.0, dim: int = 1, window=(0.0, 16.0)) -> CoefficientField:
    entries = {
        (i, j): EntrySeries(base=value if i == j else 0.0)
        for i in range(dim)
        for j in range(i, dim)
    }
    return CoefficientField(dim, entries, window)


def smooth_in_time(a: CoefficientField, eps: float, kernel: MollifierKernel | None = None) -> CoefficientField:
    """a_eps = rho_eps * a in time; window shrinks by eps at both ends."""
    if a.epsilon is not None:
        raise DomainError("coefficients are already mollified")
    t0, t1 = a.time_window
    if eps > (t1 - t0) / 2.0:
        raise DomainError(f"eps={eps} exceeds half the time window [{t0}, {t1}]")
    kernel = kernel or MollifierKernel(eps)
    out = CoefficientField(
        a.dim, a.entries, (t0 + eps, t1 - eps), kernel=kernel, epsilon=eps
    )
    return out


def freeze_time(a: CoefficientField, t0: float) -> CoefficientField:
    """Coefficients frozen at time t0 (time series folded into the base)."""
    entries = {}
    for (i, j), e in a.entries.items():
        frozen_base = float(a.entry_t_part(i, j, t0))
        entries[(i, j)] = EntrySeries(base=frozen_base, t_terms=[], x_terms=list(e.x_terms))
    return CoefficientField(a.dim, entries, a.time_window)


@dataclass
class MollifierFitReport:
    """Ratio sequences of the three mollifier estimates over an eps sweep."""

    eps: np.ndarray
    closeness_ratio: np.ndarray  # sup|a_eps - a| / (eps log(1+gamma+1/eps))
    dt_ratio: np.ndarray  # sup|dt a_eps| / log^2(1+gamma+1/eps)
    dtt_ratio: np.ndarray  # sup|dtt a_eps| / (eps^-1 log(1+gamma+1/eps))
    slopes: tuple  # log-log slopes of the three sequences


def mollifier_bound_fit(a: CoefficientField, gamma: float, eps_list) -> MollifierFitReport:
    """Fit the three mollification estimates over an eps sweep.

    Suprema are taken over one full period of the stored time series (the
    series is entire in t, so this dominates any window).  Time derivatives
    come from the differentiated kernel acting term by term.
    """
    from .spaces import loglog_slope

    eps_arr = np.asarray(sorted(eps_list, reverse=True), dtype=float)
    tg = a._fine_t_grid()
    r_close, r_dt, r_dtt = [], [], []
    for eps in eps_arr:
        kernel = MollifierKernel(eps)
        sup_close = sup_dt = sup_dtt = 0.0
        for (i, j), e in a.entries.items():
            diff = np.zeros_like(tg)
            d1 = np.zeros_like(tg)
            d2 = np.zeros_like(tg)
            for term in e.t_terms:
                damp = kernel.cos_transform(term.freq * eps)
                diff += term.eval(tg, 0, damp - 1.0)
                d1 += term.eval(tg, 1, damp)
                d2 += term.eval(tg, 2, damp)
            sup_close = max(sup_close, float(np.max(np.abs(diff))))
            sup_dt = max(sup_dt, float(np.max(np.abs(d1))))
            sup_dtt = max(sup_dtt, float(np.max(np.abs(d2))))
        logw = np.log(1.0 + gamma + 1.0 / eps)
        r_close.append(sup_close / (eps * logw))
        r_dt.append(sup_dt / logw**2)
        r_dtt.append(sup_dtt / (logw / eps))
    r_close, r_dt, r_dtt = map(np.array, (r_close, r_dt, r_dtt))
    slopes = tuple(
        loglog_slope(eps_arr, r) if np.all(r > 0) else 0.0
        for r in (r_close, r_dt, r_dtt)
    )
    return MollifierFitReport(eps_arr, r_close, r_dt, r_dtt, slopes)

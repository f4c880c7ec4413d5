"""Sobolev norms with logarithmic corrections and LL/LZ modulus estimators.

Norms are plain lattice sums over the integer frequency set:

    ||u||^2 = sum_xi  W(xi)^2 |uhat(xi)|^2,

with weight W = (1+|xi|^2)^{s/2} log^alpha(2+|xi|) in the classical case
(gamma = 0 sentinel) and W = Lambda(xi,gamma)^s log^alpha(1+gamma+|xi|) in the
parameter-dependent case (gamma >= 1).  At s = alpha = 0 both reduce to the
lattice L2 norm of `grid.l2_norm`.

Modulus-of-continuity seminorms are suprema of the defining quotients over
grid pairs with 0 < |y| < 1; the grid spacing is reported so the
discretization gap stays explicit (the grid sup is a certified lower bound).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dyadic import CutoffSystem, block, default_cutoffs
from .errors import ConfigError
from .grid import SpectralField, TorusGrid, l2_norm


@dataclass(frozen=True)
class NormSpec:
    """Sobolev index s, logarithmic index alpha, parameter gamma (0 = classical)."""

    s: float
    alpha: float = 0.0
    gamma: float = 0.0

    def __post_init__(self):
        if abs(self.s) > 10.0:
            raise ConfigError(f"|s| <= 10 expected at desk scale, got {self.s}")
        if self.gamma != 0.0 and self.gamma < 1.0:
            raise ConfigError(f"gamma must be 0 (classical) or >= 1, got {self.gamma}")

    def weight(self, abs_xi: np.ndarray) -> np.ndarray:
        abs_xi = np.asarray(abs_xi, dtype=float)
        if self.gamma == 0.0:
            base = (1.0 + abs_xi**2) ** (self.s / 2.0)
            logw = np.log(2.0 + abs_xi) ** self.alpha if self.alpha != 0.0 else 1.0
        else:
            base = (self.gamma**2 + abs_xi**2) ** (self.s / 2.0)
            logw = (
                np.log(1.0 + self.gamma + abs_xi) ** self.alpha
                if self.alpha != 0.0
                else 1.0
            )
        return base * logw


def sobolev_norm(u: SpectralField, spec: NormSpec) -> float:
    """Weighted lattice sum, square-rooted; s=alpha=0 gives the lattice L2 norm."""
    w = spec.weight(u.grid.abs_xi)
    return float(np.sqrt(np.sum((w * np.abs(u.coefficients)) ** 2)))


def dyadic_norm(u: SpectralField, spec: NormSpec, cutoffs: CutoffSystem | None = None) -> float:
    """l2 norm of the sequence delta_k = 2^{ks} (1+k)^alpha ||block(u,k)||."""
    cs = cutoffs or default_cutoffs()
    j_top = int(np.log2(u.grid.m))
    total = 0.0
    for k in range(j_top + 1):
        nk = l2_norm(block(u, k, cs))
        if nk == 0.0:
            continue
        total += (2.0 ** (k * spec.s) * (1.0 + k) ** spec.alpha * nk) ** 2
    return float(np.sqrt(total))


def norm_ratio_bracket(fields, spec: NormSpec, cutoffs: CutoffSystem | None = None):
    """Measured (min, max) of dyadic_norm/sobolev_norm over a corpus."""
    ratios = [dyadic_norm(u, spec, cutoffs) / sobolev_norm(u, spec) for u in fields]
    return float(np.min(ratios)), float(np.max(ratios))


@dataclass
class ModulusReport:
    """Measured modulus data for a sampled function."""

    seminorm: float
    sup_norm: float
    dyadic_indicator: float
    kind: str
    grid_h: float

    @property
    def norm(self) -> float:
        return self.sup_norm + self.seminorm


def _ll_quotient_weight(y: np.ndarray) -> np.ndarray:
    return y * np.log(1.0 + 1.0 / y)


def _shift_diffs(f: np.ndarray, k: int, periodic: bool):
    """First and symmetric-second differences at shift k samples."""
    if periodic:
        fp = np.roll(f, -k)
        fm = np.roll(f, k)
        return fp - f, fp + fm - 2.0 * f
    first = f[k:] - f[:-k]
    second = f[2 * k :] + f[: -2 * k] - 2.0 * f[k:-k] if 2 * k < len(f) else np.array([])
    return first, second


def _seminorm(samples: np.ndarray, h: float, kind: str, periodic: bool) -> ModulusReport:
    f = np.asarray(samples, dtype=float)
    if h > 0.125:
        raise ConfigError(f"grid spacing h={h} too coarse (need h <= 1/8)")
    k_max = int(np.ceil(1.0 / h)) - 1
    if not periodic:
        k_max = min(k_max, len(f) - 1)
    sup = 0.0
    for k in range(1, k_max + 1):
        y = k * h
        first, second = _shift_diffs(f, k, periodic)
        d = first if kind == "LL" else second
        if d.size == 0:
            continue
        q = np.max(np.abs(d)) / _ll_quotient_weight(y)
        sup = max(sup, float(q))
    indicator = dyadic_sup_indicator(f) if _is_power_of_two(len(f)) else float("nan")
    return ModulusReport(
        seminorm=sup,
        sup_norm=float(np.max(np.abs(f))),
        dyadic_indicator=indicator,
        kind=kind,
        grid_h=h,
    )


def _is_power_of_two(n: int) -> bool:
    return n >= 16 and (n & (n - 1)) == 0


def ll_seminorm(samples, h: float, periodic: bool = True) -> ModulusReport:
    """sup over grid pairs of |f(x+y)-f(x)| / (|y| log(1+1/|y|)), 0<|y|<1."""
    return _seminorm(samples, h, "LL", periodic)


def lz_seminorm(samples, h: float, periodic: bool = True) -> ModulusReport:
    """sup over grid pairs of |g(x+y)+g(x-y)-2g(x)| / (|y| log(1+1/|y|))."""
    return _seminorm(samples, h, "LZ", periodic)


def dyadic_sup_indicator(samples: np.ndarray) -> float:
    """sup_nu 2^nu (nu+1)^-1 ||block(g, nu)||_sup  (requires 2^k samples)."""
    n = len(samples)
    if not _is_power_of_two(n):
        raise ConfigError("dyadic indicator needs a power-of-two sample count >= 16")
    g = TorusGrid(1, n)
    u = SpectralField(g, values=np.asarray(samples, dtype=float))
    j_top = int(np.log2(n))
    best = 0.0
    for nu in range(j_top + 1):
        sup = block(u, nu).sup_norm()
        best = max(best, 2.0**nu / (nu + 1.0) * sup)
    return float(best)


def lz_dyadic_indicator(samples) -> float:
    return dyadic_sup_indicator(np.asarray(samples, dtype=float))


def lacunary_samples(
    kind: str,
    depth: int,
    n: int,
    seed=None,
    amplitude: float = 1.0,
) -> np.ndarray:
    """Samples on [0, 2pi) of the lacunary generator for a modulus class.

    kind 'll': sum_k 2^-k cos(2^k x + theta_k)   (log-Lipschitz scale)
    kind 'lz': sum_k (k+1) 2^-k cos(2^k x + theta_k)  (log-Zygmund scale)
    kind 'lip': sum_k 4^-k cos(2^k x + theta_k)  (over-regular contrast)
    Phases theta_k are zero for seed=None, else drawn from the seeded generator.
    """
    x = np.arange(n) * (2.0 * np.pi / n)
    if seed is None:
        phases = np.zeros(depth)
    else:
        phases = np.random.default_rng(seed).uniform(0.0, 2.0 * np.pi, size=depth)
    out = np.zeros(n)
    for idx, k in enumerate(range(1, depth + 1)):
        if kind == "ll":
            a = 2.0**-k
        elif kind == "lz":
            a = (k + 1) * 2.0**-k
        elif kind == "lip":
            a = 4.0**-k
        else:
            raise ConfigError(f"unknown lacunary kind {kind!r}")
        out += amplitude * a * np.cos(2.0**k * x + phases[idx])
    return out


def rough_symbol_samples(depth: int, n: int, seed=None, amplitude: float = 1.0,
                         half_ring: bool = False, per_ring: int = 1) -> np.ndarray:
    """Log-Lipschitz generator with generic frequencies per dyadic ring.

    Frequencies are drawn inside each ring (never on the dyadic powers
    themselves, which sit on the flat spots of every ring profile), with
    log-Lipschitz amplitude scaling 2^-k split across `per_ring` draws and
    seeded phases.  half_ring restricts the draws to the lower half-ring.
    """
    rng = np.random.default_rng(seed)
    x = np.arange(n) * (2.0 * np.pi / n)
    out = np.zeros(n)
    for k in range(1, depth + 1):
        lo = 2 ** (k - 1) + 1
        hi = 2**k - 1 if half_ring else 2 ** (k + 1) - 1
        for _ in range(per_ring):
            freq = int(rng.integers(lo, max(lo + 1, hi)))
            phase = rng.uniform(0.0, 2.0 * np.pi)
            out += amplitude * 2.0**-k / per_ring * np.cos(freq * x + phase)
    return out


def time_increment_ratios(samples, h: float, gamma: float, taus):
    """First-difference quotients against |tau| log^2(1+gamma+1/|tau|).

    For each tau (rounded to the sample grid) returns the measured ratio
    sup_t |a(t+tau)-a(t)| / (tau log^2(1+gamma+1/tau)); for LZ-class inputs
    the sequence should show no trend in tau.
    """
    f = np.asarray(samples, dtype=float)
    ratios = []
    used = []
    for tau in taus:
        k = max(1, int(round(tau / h)))
        y = k * h
        first = np.roll(f, -k) - f
        bound = y * np.log(1.0 + gamma + 1.0 / y) ** 2
        ratios.append(float(np.max(np.abs(first)) / bound))
        used.append(y)
    return np.array(used), np.array(ratios)


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of log(ys) against log(xs)."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    keep = (xs > 0) & (ys > 0)
    if np.sum(keep) < 2:
        return 0.0
    return float(np.polyfit(np.log(xs[keep]), np.log(ys[keep]), 1)[0])

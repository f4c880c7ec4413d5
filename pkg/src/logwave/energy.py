"""Block energies, the weighted total energy, and the loss-of-derivatives meters.

For each dyadic block nu the state is rotated through paradifferential
operators built from the coefficients mollified at scale eps = 2^-nu:

    v_nu = T_{alpha^-1/2} d_t u_nu - T_{d_t(alpha^-1/2)} u_nu
    w_nu = T_{alpha^1/2 Lambda} u_nu
    z_nu = u_nu
    e_nu = ||v_nu||^2 + ||w_nu||^2 + ||z_nu||^2      (physical L2 norms)

and the total energy is the weighted sum
    E(t) = sum_nu exp(-2 beta (nu+1) t) 2^{-2 nu theta} e_nu(t).

The differential-inequality verdict, the Gronwall cross-check, and the loss
meter all consume one table of block energies per trajectory, so beta sweeps
reweight it without recomputing operators.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .dyadic import block, default_cutoffs
from .errors import ConfigError, DomainError
from .grid import SpectralField, l2_inner, l2_norm
from .parad import AlphaSymbols, ParamSymbol, apply_twisted_columns, make_cutoff
from .rough import CoefficientField, smooth_in_time
from .solver import Trajectory
from .spaces import NormSpec, sobolev_norm

LN2 = float(np.log(2.0))


@dataclass
class EnergyConfig:
    theta: float
    beta: float
    gamma: float
    mu: int
    nu_max: int
    horizon: float

    def __post_init__(self):
        if not 0.0 < self.theta < 1.0:
            raise ConfigError(f"theta must lie in (0,1), got {self.theta}")
        if self.beta <= 0.0:
            raise ConfigError("beta must be positive")
        if self.theta + self.beta_star * self.horizon >= 1.0:
            raise ConfigError(
                f"need theta + beta* T < 1, got {self.theta + self.beta_star * self.horizon:.3f}"
            )

    @property
    def beta_star(self) -> float:
        return self.beta / LN2

    def weights(self, t: float, beta: float | None = None) -> np.ndarray:
        b = self.beta if beta is None else beta
        nus = np.arange(self.nu_max + 1)
        return np.exp(-2.0 * b * (nus + 1) * t) * 2.0 ** (-2.0 * nus * self.theta)

    @staticmethod
    def epsilon(nu: int) -> float:
        return 2.0**-nu


def _qnorm2(f: SpectralField) -> float:
    return max(l2_inner(f, f).real, 0.0)


class EnergyMachine:
    """Caches mollified coefficients and per-(nu, t) symbols for one run."""

    def __init__(self, a: CoefficientField, grid, cfg: EnergyConfig, cutoffs=None):
        if grid.dim != 1:
            raise ConfigError("energy bookkeeping is implemented on the 1-D torus")
        self.a = a
        self.grid = grid
        self.cfg = cfg
        self.cutoffs = cutoffs or default_cutoffs()
        self.cutoff = make_cutoff(cfg.mu, cfg.gamma, grid, self.cutoffs)
        self._a_eps: dict = {}
        self._cols: dict = {}

    def a_eps(self, nu: int) -> CoefficientField:
        if nu not in self._a_eps:
            self._a_eps[nu] = smooth_in_time(self.a, EnergyConfig.epsilon(nu))
        return self._a_eps[nu]

    def _columns(self, nu: int) -> np.ndarray:
        if nu not in self._cols:
            mult = self.cutoffs.block_multiplier(self.grid, nu)
            self._cols[nu] = np.nonzero(mult > 0.0)[0]
        return self._cols[nu]

    def alpha(self, nu: int, t: float) -> AlphaSymbols:
        return AlphaSymbols(self.a_eps(nu), self.cfg.gamma, t, self.cutoff)

    def tarama_components(self, u: SpectralField, ut: SpectralField, nu: int, t: float):
        """(v_nu, w_nu, z_nu) via the ring-restricted twisted convolution."""
        u_nu = block(u, nu, self.cutoffs)
        ut_nu = block(ut, nu, self.cutoffs)
        cols = self._columns(nu)
        fam = self.alpha(nu, t)
        lam_cols = fam.lam[cols]
        inv_sqrt = fam.alpha[:, cols] ** -0.5
        dt_inv_sqrt = -0.5 * fam.alpha[:, cols] ** -1.5 * fam.dt_alpha[:, cols]
        w_table = fam.alpha[:, cols] ** 0.5 * lam_cols[None, :]
        v = apply_twisted_columns(self.cutoff, inv_sqrt, cols, ut_nu) - \
            apply_twisted_columns(self.cutoff, dt_inv_sqrt, cols, u_nu)
        w = apply_twisted_columns(self.cutoff, w_table, cols, u_nu)
        return v, w, u_nu

    def block_energies(self, u: SpectralField, ut: SpectralField, t: float) -> np.ndarray:
        e = np.zeros(self.cfg.nu_max + 1)
        for nu in range(self.cfg.nu_max + 1):
            v, w, z = self.tarama_components(u, ut, nu, t)
            e[nu] = block_energy(v, w, z)
        return e

    def tail_fraction(self, u: SpectralField) -> float:
        total = l2_norm(u) ** 2
        if total == 0.0:
            return 0.0
        tail = 0.0
        j = self.cfg.nu_max + 1
        j_top = int(np.log2(self.grid.m))
        for k in range(j, j_top + 1):
            tail += l2_norm(block(u, k, self.cutoffs)) ** 2
        return tail / total


def tarama_components(machine: EnergyMachine, u, ut, nu: int, t: float):
    return machine.tarama_components(u, ut, nu, t)


def block_energy(v: SpectralField, w: SpectralField, z: SpectralField) -> float:
    """e_nu = ||v||^2 + ||w||^2 + ||z||^2 in the physical (quadrature) L2 norm."""
    return _qnorm2(v) + _qnorm2(w) + _qnorm2(z)


def total_energy(machine: EnergyMachine, u, ut, t: float, Lu: SpectralField | None = None,
                 beta: float | None = None):
    """Weighted total energy and its record row at time t."""
    cfg = machine.cfg
    if machine.tail_fraction(u) > 0.01:
        warnings.warn("spectral mass above block nu_max exceeds 1%: energy truncated")
    e = machine.block_energies(u, ut, t)
    b = cfg.beta if beta is None else beta
    total = float(np.sum(cfg.weights(t, b) * e))
    bstar = b / LN2
    row = {
        "t": t,
        "e": e,
        "E": total,
        "norm_u": sobolev_norm(u, NormSpec(-cfg.theta + 1.0 - bstar * t)),
        "norm_ut": sobolev_norm(ut, NormSpec(-cfg.theta - bstar * t)),
        "norm_Lu": 0.0 if Lu is None else sobolev_norm(Lu, NormSpec(-cfg.theta - bstar * t)),
    }
    return total, row


@dataclass
class CommutatorReport:
    nu: int
    norm: float
    ratio: float  # ||sum_ij d_i [D_nu, T_aij] d_j u|| / (2^nu ||grad u near nu||)
    normalized: float  # ratio / (nu + 1)
    far_piece_max: float  # sup of pieces with |k - nu| >= 3 (exact zero)
    low_piece_max: float  # the S_mu piece for nu >= mu + 5 (exact zero)


def commutator_probe(a: CoefficientField, u: SpectralField, nu: int, mu: int,
                     cutoffs=None, t: float = 0.0) -> CommutatorReport:
    """Measure the paraproduct commutator on a field and check its structure.

    Uses the exact paraproduct splitting of T_a for x-symbols:
    [D_nu, T_a]w = [D_nu, S_mu a] S_{mu+2} w + sum_k [D_nu, S_{k-3} a] D_k w.
    Requires product headroom 2^{nu+1} + (top coefficient mode) <= M/2 so the
    structural zeros are exact on the lattice.
    """
    grid = u.grid
    cs = cutoffs or default_cutoffs()
    m = grid.m
    x_top = max(
        [term.freq for e in a.entries.values() for term, _ in e.x_terms], default=0.0
    )
    if 2 ** (nu + 1) + x_top > m // 2:
        raise ConfigError("insufficient headroom for exact commutator products")

    from .dyadic import low_pass

    k_top = int(np.log2(m)) - 1
    total = SpectralField.zero(grid)
    far_max = 0.0
    low_max = 0.0
    for i in range(grid.dim):
        for j in range(grid.dim):
            av = SpectralField(grid, values=a.entry_values(i, j, t, grid))
            w = u.derivative(axis=j)

            def bracket(mult_field, win):
                prod1 = SpectralField(grid, values=mult_field.values * win.values)
                piece = block(prod1, nu, cs) - SpectralField(
                    grid, values=mult_field.values * block(win, nu, cs).values
                )
                return piece

            low = bracket(low_pass(av, mu, cs), low_pass(w, mu + 2, cs))
            if nu >= mu + 5:
                low_max = max(low_max, l2_norm(low))
            total = total + low.derivative(axis=i)
            for k in range(mu + 3, k_top + 1):
                piece = bracket(low_pass(av, k - 3, cs), block(w, k, cs))
                if abs(k - nu) >= 3:
                    far_max = max(far_max, l2_norm(piece))
                else:
                    total = total + piece.derivative(axis=i)
    # reference scale: gradient mass of u near ring nu (|grad| ~ 2^nu there)
    nb = SpectralField.zero(grid)
    for k in range(max(0, nu - 2), nu + 3):
        nb = nb + block(u, k, cs)
    grad2 = sum(l2_norm(nb.derivative(axis=ax)) ** 2 for ax in range(grid.dim))
    scale = max(np.sqrt(grad2), 1e-300)
    ratio = l2_norm(total) / scale
    return CommutatorReport(nu, l2_norm(total), ratio, ratio / (nu + 1.0),
                            far_max, low_max)


@dataclass
class EnergyTable:
    """Block energies and norms along a trajectory (beta-independent part)."""

    times: np.ndarray
    e: np.ndarray  # (n_t, nu_max+1)
    lu_coeffs: list  # residual fields
    u_fields: list
    ut_fields: list


def energy_table(traj: Trajectory, machine: EnergyMachine) -> EnergyTable:
    e_rows = []
    for t, u, ut in zip(traj.times, traj.u_snapshots, traj.ut_snapshots):
        e_rows.append(machine.block_energies(u, ut, float(t)))
    return EnergyTable(np.asarray(traj.times, float), np.array(e_rows),
                       list(traj.residuals), list(traj.u_snapshots),
                       list(traj.ut_snapshots))


def total_series(table: EnergyTable, cfg: EnergyConfig, beta: float) -> np.ndarray:
    w = np.stack([cfg.weights(float(t), beta) for t in table.times])
    return np.sum(w * table.e, axis=1)


def centered_derivative(values: np.ndarray, dt: float):
    """Interior centered differences and a dt^2 differencing-error estimate."""
    n = len(values)
    d = np.full(n, np.nan)
    tol = np.full(n, np.nan)
    d[1:-1] = (values[2:] - values[:-2]) / (2.0 * dt)
    third = np.zeros(n)
    if n >= 5:
        third[2:-2] = (values[4:] - 2 * values[3:-1] + 2 * values[1:-3] - values[:-4]) / (
            2.0 * dt**3
        )
        third[1] = third[2]
        third[-2] = third[-3]
    tol[1:-1] = dt**2 / 6.0 * np.abs(third[1:-1]) + 1e-12 * np.max(np.abs(values))
    return d, tol


@dataclass
class InequalityReport:
    betas: tuple
    c2: float
    per_beta: dict
    beta_required: float | None
    defect_ratio: float
    record_rows: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.beta_required is not None


def calibrate_c2(table: EnergyTable, cfg: EnergyConfig, beta: float, safety: float = 1.5) -> float:
    """Fit C2 on a (forced, Lipschitz-coefficient) calibration run."""
    E = total_series(table, cfg, beta)
    dE, _ = centered_derivative(E, float(table.times[1] - table.times[0]))
    bstar = beta / LN2
    worst = 0.0
    for i in range(1, len(E) - 1):
        t = float(table.times[i])
        lu = sobolev_norm(table.lu_coeffs[i], NormSpec(-cfg.theta - bstar * t))
        if lu * np.sqrt(E[i]) > 0 and dE[i] > 0:
            worst = max(worst, dE[i] / (np.sqrt(E[i]) * lu))
    return safety * worst if worst > 0 else 1.0


def inequality_check(
    table: EnergyTable,
    cfg: EnergyConfig,
    betas,
    c2: float,
    machine: EnergyMachine | None = None,
    delta_target: float = 0.4,
    min_samples: int = 8,
    frac_required: float = 0.99,
) -> InequalityReport:
    """Sweep beta for dE/dt <= C2 sqrt(E) ||Lu|| (+ differencing tolerance).

    Each beta is tested on the window beta* t <= delta_target; the verdict is
    the smallest beta passing on >= 99% of its interior samples.  The
    paraproduct-defect norm ratio is evaluated alongside when a machine is
    supplied.
    """
    dt = float(table.times[1] - table.times[0])
    per_beta = {}
    chosen = None
    rows_out = []
    for b in sorted(betas):
        bstar = b / LN2
        t_cap = delta_target / bstar
        E = total_series(table, cfg, b)
        dE, tol = centered_derivative(E, dt)
        ok = 0
        n = 0
        worst = -np.inf
        for i in range(1, len(E) - 1):
            t = float(table.times[i])
            if t > t_cap:
                break
            lu = sobolev_norm(table.lu_coeffs[i], NormSpec(-cfg.theta - bstar * t))
            rhs = c2 * np.sqrt(max(E[i], 0.0)) * lu + tol[i]
            margin = dE[i] - rhs
            worst = max(worst, margin / max(E[i], 1e-300))
            n += 1
            if margin <= 0.0:
                ok += 1
        frac = ok / n if n else 0.0
        per_beta[b] = {"n_samples": n, "frac_ok": frac, "worst_margin": worst}
        if chosen is None and n >= min_samples and frac >= frac_required:
            chosen = float(b)
            E_sel, dE_sel = E, dE
    defect = paraproduct_defect_ratio(table, cfg, machine) if machine is not None else float("nan")
    if chosen is not None:
        bstar = chosen / LN2
        for i, t in enumerate(table.times):
            rows_out.append({
                "t": float(t),
                "e": table.e[i],
                "E": float(E_sel[i]),
                "norm_u": sobolev_norm(table.u_fields[i], NormSpec(-cfg.theta + 1 - bstar * t)),
                "norm_ut": sobolev_norm(table.ut_fields[i], NormSpec(-cfg.theta - bstar * t)),
                "norm_Lu": sobolev_norm(table.lu_coeffs[i], NormSpec(-cfg.theta - bstar * t)),
                "dEdt": float(dE_sel[i]) if np.isfinite(dE_sel[i]) else 0.0,
                "verdict": int(i > 0 and i < len(table.times) - 1),
            })
    return InequalityReport(tuple(sorted(betas)), c2, per_beta, chosen, defect, rows_out)


def paraproduct_defect_ratio(table: EnergyTable, cfg: EnergyConfig,
                             machine: EnergyMachine, samples=(0,)) -> float:
    """max over sampled times of the (a - T_a) defect norm against its bound."""
    grid = machine.grid
    worst = 0.0
    for i in samples:
        t = float(table.times[i])
        u = table.u_fields[i]
        s = cfg.theta + cfg.beta_star * t
        defect = SpectralField.zero(grid)
        for ii in range(grid.dim):
            for jj in range(grid.dim):
                av = machine.a.entry_values(ii, jj, t, grid)
                w = u.derivative(axis=jj)
                full = SpectralField(grid, values=av * w.values)
                para = ParamSymbol.from_x_function(machine.cutoff, av).apply(w)
                defect = defect + (full - para).derivative(axis=ii)
        num = sobolev_norm(defect, NormSpec(-s, -0.5, cfg.gamma))
        den = sobolev_norm(u, NormSpec(1.0 - s, 0.5, cfg.gamma))
        if den > 0:
            worst = max(worst, num / den)
    return worst


def gronwall_check(table: EnergyTable, cfg: EnergyConfig, beta: float, c2: float):
    """Integrated form: sqrt(E(t)) <= sqrt(E(0)) + (C2/2) int ||Lu|| + tolerance."""
    bstar = beta / LN2
    E = total_series(table, cfg, beta)
    dt = float(table.times[1] - table.times[0])
    lus = np.array([
        sobolev_norm(lu, NormSpec(-cfg.theta - bstar * t))
        for lu, t in zip(table.lu_coeffs, table.times)
    ])
    integral = np.concatenate([[0.0], np.cumsum((lus[1:] + lus[:-1]) / 2.0 * dt)])
    lhs = np.sqrt(np.maximum(E, 0.0))
    rhs = lhs[0] + c2 / 2.0 * integral
    tol = 1e-8 * max(lhs[0], 1.0) + dt**2 * np.max(np.abs(E)) / max(np.min(lhs[lhs > 0], initial=1.0), 1e-30)
    return float(np.max(lhs - rhs)), float(tol)


@dataclass
class LossReport:
    beta_star_grid: tuple
    fitted_beta_star: float | None
    margin: float
    sup_ratio: dict  # beta_star -> sup_t of (left side)/(fitted C at t=0+)
    floor: float
    sigma_curve: np.ndarray | None = None  # measured index per time sample

    @property
    def at_floor(self) -> bool:
        return self.fitted_beta_star == self.floor


def loss_meter(traj: Trajectory, theta: float, beta_star_grid, margin: float = 2.0,
               with_sigma: bool = False) -> LossReport:
    """Smallest beta* on the grid keeping the shifted norms within margin x data.

    Runs are expected force-free; the data norm is
    ||u(0)||_{H^{1-theta}} + ||u_t(0)||_{H^{-theta}} and the criterion is
    sup_t ( ||u(t)||_{H^{1-theta-b t}} + ||u_t(t)||_{H^{-theta-b t}} ) <= margin * data.
    """
    grid_vals = tuple(sorted(beta_star_grid))
    T = float(traj.times[-1])
    admissible = [b for b in grid_vals if theta + b * T < 1.0]
    if not admissible:
        raise DomainError("horizon violates theta + beta*T < 1 for every grid value")
    u0, ut0 = traj.u_snapshots[0], traj.ut_snapshots[0]
    data = sobolev_norm(u0, NormSpec(1.0 - theta)) + sobolev_norm(ut0, NormSpec(-theta))
    sup_ratio = {}
    fitted = None
    for b in admissible:
        sup = 0.0
        for t, u, ut in zip(traj.times, traj.u_snapshots, traj.ut_snapshots):
            left = sobolev_norm(u, NormSpec(1.0 - theta - b * t)) + \
                sobolev_norm(ut, NormSpec(-theta - b * t))
            sup = max(sup, left / data)
        sup_ratio[b] = sup
        if fitted is None and sup <= margin:
            fitted = float(b)
    sigma = measured_index_curve(traj, theta, margin) if with_sigma else None
    return LossReport(grid_vals, fitted, margin, sup_ratio, float(admissible[0]), sigma)


def measured_index_curve(traj: Trajectory, theta: float, margin: float = 2.0,
                         s_range=(-6.0, 6.0)) -> np.ndarray:
    """Per-sample largest Sobolev index s with ||u(t)||_{H^s} <= margin * data."""
    u0, ut0 = traj.u_snapshots[0], traj.ut_snapshots[0]
    data = sobolev_norm(u0, NormSpec(1.0 - theta)) + sobolev_norm(ut0, NormSpec(-theta))
    bound = margin * data
    out = np.zeros(len(traj.times))
    for i, u in enumerate(traj.u_snapshots):
        lo, hi = s_range
        if sobolev_norm(u, NormSpec(hi)) <= bound:
            out[i] = hi
            continue
        if sobolev_norm(u, NormSpec(lo)) > bound:
            out[i] = lo
            continue
        for _ in range(40):
            mid = (lo + hi) / 2.0
            if sobolev_norm(u, NormSpec(mid)) <= bound:
                lo = mid
            else:
                hi = mid
        out[i] = lo
    return out

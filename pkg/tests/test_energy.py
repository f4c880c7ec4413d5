import numpy as np
import pytest

from logwave.dyadic import block, ring_field
from logwave.energy import (
    EnergyConfig,
    EnergyMachine,
    block_energy,
    calibrate_c2,
    commutator_probe,
    energy_table,
    gronwall_check,
    inequality_check,
    loss_meter,
    measured_index_curve,
    tarama_components,
    total_energy,
    total_series,
)
from logwave.errors import ConfigError, DomainError
from logwave.grid import SpectralField, TorusGrid, l2_norm, mode, quad_norm, random_field
from logwave.rough import CoefficientProfile, constant_coefficients, make_coefficients
from logwave.solver import CauchyProblem, solve
from logwave.suites import lipschitz_coefficients, resonant_lz_coefficients

TWO_PI = 2.0 * np.pi


@pytest.fixture(scope="module")
def g256():
    return TorusGrid(1, 256)


def _machine(g, a=None, theta=0.5, beta=2.0, gamma=2.0, mu=0, nu_max=None, horizon=0.1):
    a = a or constant_coefficients(1.0)
    nu_max = nu_max if nu_max is not None else int(np.log2(g.m)) - 3
    cfg = EnergyConfig(theta=theta, beta=beta, gamma=gamma, mu=mu,
                       nu_max=nu_max, horizon=horizon)
    return EnergyMachine(a, g, cfg)


def test_config_validation():
    with pytest.raises(ConfigError):
        EnergyConfig(theta=1.2, beta=1.0, gamma=2.0, mu=0, nu_max=5, horizon=0.1)
    with pytest.raises(ConfigError):
        EnergyConfig(theta=0.5, beta=-1.0, gamma=2.0, mu=0, nu_max=5, horizon=0.1)
    with pytest.raises(ConfigError):
        # theta + beta* T >= 1
        EnergyConfig(theta=0.5, beta=4.0, gamma=2.0, mu=0, nu_max=5, horizon=0.2)
    cfg = EnergyConfig(theta=0.5, beta=2.0, gamma=2.0, mu=0, nu_max=5, horizon=0.1)
    assert cfg.beta_star == pytest.approx(2.0 / np.log(2.0))
    assert EnergyConfig.epsilon(3) == 0.125


def test_identity_coefficient_components(g256, rng):
    machine = _machine(g256)
    u = random_field(g256, rng, band=(1, 64))
    ut = random_field(g256, rng, band=(1, 64))
    nu = 4
    v, w, z = tarama_components(machine, u, ut, nu, 0.0)
    ut_nu = block(ut, nu)
    u_nu = block(u, nu)
    # alpha = 1: v = block of u_t, w = Lambda(D, gamma) block of u, z = block
    assert l2_norm(v - ut_nu) <= 1e-12 * l2_norm(ut_nu)
    lam = np.sqrt(machine.cfg.gamma**2 + g256.freqs**2)
    w_expect = SpectralField(g256, coefficients=lam * u_nu.coefficients)
    assert l2_norm(w - w_expect) <= 1e-12 * l2_norm(w_expect)
    assert l2_norm(z - u_nu) == 0.0


def test_constant_in_time_drops_correction(g256, rng):
    prof = CoefficientProfile(dim=1, base=2.0, lz_depth=0, ll_depth=4,
                              amp_t=0.0, amp_x=0.2, seed=1)
    a = make_coefficients(prof)
    machine = _machine(g256, a=a)
    u = random_field(g256, rng, band=(1, 64))
    ut = SpectralField.zero(g256)
    v, _, _ = tarama_components(machine, u, ut, 4, 0.3)
    # dt(alpha^-1/2) = 0, and ut = 0, so v vanishes
    assert l2_norm(v) <= 1e-12 * l2_norm(u)


def test_block_energy_closed_form(g256):
    machine = _machine(g256)
    nu = 5
    u = mode(g256, 2**nu)
    ut = SpectralField.zero(g256)
    v, w, z = tarama_components(machine, u, ut, nu, 0.0)
    e = block_energy(v, w, z)
    gamma = machine.cfg.gamma
    expected = ((gamma**2 + 4.0**nu) + 1.0) * TWO_PI
    assert abs(e - expected) <= 1e-9 * expected


def test_block_energy_quadratic_scaling(g256, rng):
    machine = _machine(g256)
    u = random_field(g256, rng, band=(1, 64))
    ut = random_field(g256, rng, band=(1, 64))
    e1 = block_energy(*tarama_components(machine, u, ut, 4, 0.0))
    lam = 3.0
    e2 = block_energy(*tarama_components(machine, lam * u, lam * ut, 4, 0.0))
    assert abs(e2 - lam**2 * e1) <= 1e-10 * e2


def test_w_component_comparable_to_gradient(g256, rng):
    prof = CoefficientProfile(dim=1, base=2.0, lz_depth=6, ll_depth=4,
                              amp_t=0.25, amp_x=0.2, seed=3)
    a = make_coefficients(prof)
    machine = _machine(g256, a=a, gamma=2.0)
    ratios = []
    for nu in range(3, 6):
        u = ring_field(g256, nu, rng)
        _, w, _ = tarama_components(machine, u, SpectralField.zero(g256), nu, 0.2)
        ratios.append(quad_norm(w) ** 2 / (4.0**nu * quad_norm(block(u, nu)) ** 2))
    assert max(ratios) / min(ratios) <= 8.0
    assert 0.1 <= min(ratios) and max(ratios) <= 10.0


def test_total_energy_weights_and_zero_state(g256, rng):
    machine = _machine(g256)
    zero = SpectralField.zero(g256)
    e_total, row = total_energy(machine, zero, zero, 0.0)
    assert e_total == 0.0
    u = random_field(g256, rng, band=(1, 24))
    ut = random_field(g256, rng, band=(1, 24))
    total, row = total_energy(machine, u, ut, 0.0)
    cfg = machine.cfg
    # at t = 0 the weights are 2^{-2 nu theta}
    weights = 2.0 ** (-2.0 * np.arange(cfg.nu_max + 1) * cfg.theta)
    assert abs(total - np.sum(weights * row["e"])) <= 1e-12 * total
    # recomputation identity
    assert abs(total - np.sum(cfg.weights(0.0) * row["e"])) <= 1e-12 * total


def test_total_energy_truncation_warning(g256, rng):
    machine = _machine(g256, nu_max=2)
    u = ring_field(g256, 5, rng)
    with pytest.warns(UserWarning):
        total_energy(machine, u, SpectralField.zero(g256), 0.0)


def test_energy_weight_monotonicity(g256, rng):
    u = random_field(g256, rng, band=(1, 24))
    ut = random_field(g256, rng, band=(1, 24))
    t = 0.05
    totals = []
    for beta in (1.0, 2.0, 4.0):
        machine = _machine(g256, beta=beta, horizon=0.05)
        totals.append(total_energy(machine, u, ut, t, beta=beta)[0])
    assert totals[0] >= totals[1] >= totals[2]
    thetas = []
    for theta in (0.25, 0.5, 0.75):
        machine = _machine(g256, theta=theta, horizon=0.05)
        thetas.append(total_energy(machine, u, ut, t)[0])
    assert thetas[0] >= thetas[1] >= thetas[2]


def test_energy_comparability_brackets(g256, rng):
    # sqrt(E(0)) against the data-norm pair, measured bracket per theta
    from logwave.spaces import NormSpec, sobolev_norm

    for theta in (0.25, 0.5, 0.75):
        machine = _machine(g256, theta=theta, horizon=0.05)
        ratios = []
        for _ in range(6):
            u = random_field(g256, rng, band=(1, 32))
            ut = random_field(g256, rng, band=(1, 32))
            total, _ = total_energy(machine, u, ut, 0.0)
            data = sobolev_norm(ut, NormSpec(-theta)) + sobolev_norm(u, NormSpec(1 - theta))
            ratios.append(np.sqrt(total) / data)
        assert max(ratios) / min(ratios) <= 50.0


def test_commutator_constant_coefficient_zero(g256, rng):
    a = constant_coefficients(2.0)
    u = random_field(g256, rng, band=(1, 64))
    rep = commutator_probe(a, u, 4, 0)
    assert rep.ratio <= 1e-12
    assert rep.far_piece_max <= 1e-25


def test_commutator_single_mode_support(g256):
    # a = single mode at 2^3: only |k - nu| <= 2 pieces survive structurally
    from logwave.rough import CoefficientField, EntrySeries, SeriesTerm

    entries = {(0, 0): EntrySeries(base=2.0, x_terms=[(SeriesTerm(0.5, 8.0, 0.0), 0)])}
    a = CoefficientField(1, entries, (0.0, 4.0))
    u = random_field(TorusGrid(1, 1024), np.random.default_rng(2), band=(1, 300))
    rep = commutator_probe(a, u, 6, 0)
    assert rep.far_piece_max <= 1e-12
    assert rep.norm > 0.0


def test_commutator_structural_zero_exactness():
    grid = TorusGrid(1, 2048)
    prof = CoefficientProfile(dim=1, base=2.0, lz_depth=4, ll_depth=6,
                              amp_t=0.2, amp_x=0.2, seed=4)
    a = make_coefficients(prof)
    u = random_field(grid, np.random.default_rng(3), band=(1, 700))
    for nu in (6, 7):
        rep = commutator_probe(a, u, nu, 1)
        scale = l2_norm(u.derivative())
        assert rep.far_piece_max / scale <= 1e-12
        if nu >= 1 + 5:
            assert rep.low_piece_max / scale <= 1e-12


def _short_run(a, g, rng, horizon=0.1, rings=(2, 3, 4)):
    u0 = SpectralField.zero(g)
    for j in rings:
        u0 = u0 + ring_field(g, j, rng)
    dt = 0.2 * g.spacing / np.sqrt(a.Lambda0)
    n = int(np.floor(horizon / dt))
    return solve(CauchyProblem(a, u0, SpectralField.zero(g), horizon=n * dt, dt=dt))


def test_inequality_conservative_case(g256, rng):
    # identity coefficients, no forcing: E decreases for every beta
    a = constant_coefficients(1.0)
    traj = _short_run(a, g256, rng)
    cfg = EnergyConfig(theta=0.5, beta=1.0, gamma=1.0, mu=0, nu_max=5,
                       horizon=float(traj.times[-1]))
    machine = EnergyMachine(a, g256, cfg)
    table = energy_table(traj, machine)
    rep = inequality_check(table, cfg, (1.0, 2.0), c2=1.0, min_samples=4)
    assert rep.ok
    assert rep.beta_required == 1.0


def test_inequality_forced_manufactured(g256, rng):
    a = lipschitz_coefficients()
    u0 = ring_field(g256, 3, rng)
    fmode = ring_field(g256, 4, rng)

    def forcing(t):
        return np.sin(2.0 * t) * fmode

    dt = 0.2 * g256.spacing / np.sqrt(a.Lambda0)
    n = 60
    traj = solve(CauchyProblem(a, u0, SpectralField.zero(g256), horizon=n * dt,
                               dt=dt, forcing=forcing))
    cfg = EnergyConfig(theta=0.5, beta=1.0, gamma=2.0, mu=0, nu_max=5,
                       horizon=float(traj.times[-1]))
    machine = EnergyMachine(a, g256, cfg)
    table = energy_table(traj, machine)
    c2 = calibrate_c2(table, cfg, 0.25)
    rep = inequality_check(table, cfg, (1.0, 2.0, 4.0), c2=c2, machine=machine,
                           min_samples=4)
    assert rep.ok
    assert np.isfinite(rep.defect_ratio)
    defect, tol = gronwall_check(table, cfg, rep.beta_required, c2)
    assert defect <= tol


def test_energy_table_beta_reweighting(g256, rng):
    a = constant_coefficients(1.0)
    traj = _short_run(a, g256, rng)
    cfg = EnergyConfig(theta=0.5, beta=1.0, gamma=1.0, mu=0, nu_max=5,
                       horizon=float(traj.times[-1]))
    machine = EnergyMachine(a, g256, cfg)
    table = energy_table(traj, machine)
    e1 = total_series(table, cfg, 1.0)
    direct = [total_energy(machine, u, ut, float(t), beta=1.0)[0]
              for t, u, ut in zip(traj.times[:3], traj.u_snapshots[:3], traj.ut_snapshots[:3])]
    assert np.max(np.abs(e1[:3] - direct)) <= 1e-12 * np.max(e1[:3])


def test_loss_meter_constant_coefficients(g256, rng):
    a = constant_coefficients(1.0)
    traj = _short_run(a, g256, rng, horizon=0.4)
    rep = loss_meter(traj, 0.5, (0.02, 0.05, 0.1))
    assert rep.at_floor


def test_loss_meter_scale_invariance(g256, rng):
    a = constant_coefficients(1.0)
    u0 = ring_field(g256, 3, rng)
    dt = 0.2 * g256.spacing
    n = 50
    t1 = solve(CauchyProblem(a, u0, SpectralField.zero(g256), horizon=n * dt, dt=dt))
    t2 = solve(CauchyProblem(a, 2.0 * u0, SpectralField.zero(g256), horizon=n * dt, dt=dt))
    r1 = loss_meter(t1, 0.5, (0.02, 0.05, 0.1))
    r2 = loss_meter(t2, 0.5, (0.02, 0.05, 0.1))
    assert r1.fitted_beta_star == r2.fitted_beta_star
    assert r1.sup_ratio == pytest.approx(r2.sup_ratio)


def test_loss_meter_domain_error():
    g = TorusGrid(1, 64)
    a = constant_coefficients(1.0)
    u0 = mode(g, 2)
    dt = 0.2 * g.spacing
    traj = solve(CauchyProblem(a, u0, SpectralField.zero(g), horizon=50 * dt, dt=dt))
    with pytest.raises(DomainError):
        loss_meter(traj, 0.9, (2.0, 4.0))  # theta + b T >= 1 for every entry


def test_resonant_family_detects_loss():
    g = TorusGrid(1, 512)
    k = 8
    a = resonant_lz_coefficients(k, 0.9, 0.0)
    u0 = SpectralField(g, values=np.cos(2 ** (k - 1) * g.axis_points()))
    dt = 0.2 * g.spacing / np.sqrt(a.Lambda0)
    n = int(np.floor(2.3 / dt))
    traj = solve(CauchyProblem(a, u0, SpectralField.zero(g), horizon=n * dt, dt=dt),
                 snapshot_stride=8)
    rep = loss_meter(traj, 0.5, (0.02, 0.05, 0.1, 0.2), with_sigma=True)
    assert rep.fitted_beta_star is None or rep.fitted_beta_star > rep.floor
    # the measured-index curve dips below its initial value as the block grows
    assert rep.sigma_curve is not None
    assert np.min(rep.sigma_curve) < rep.sigma_curve[0] - 0.2


def test_measured_index_curve_static(g256, rng):
    a = constant_coefficients(1.0)
    traj = _short_run(a, g256, rng, horizon=0.1)
    sigma = measured_index_curve(traj, 0.5, margin=2.0)
    assert np.all(np.isfinite(sigma))
    assert abs(sigma[0] - sigma[-1]) <= 1.0


def test_energy_continuity_along_trajectory(g256, rng):
    a = constant_coefficients(1.0)
    traj = _short_run(a, g256, rng)
    cfg = EnergyConfig(theta=0.5, beta=1.0, gamma=1.0, mu=0, nu_max=5,
                       horizon=float(traj.times[-1]))
    table = energy_table(traj, EnergyMachine(a, g256, cfg))
    E = total_series(table, cfg, 1.0)
    dt = float(table.times[1] - table.times[0])
    jumps = np.abs(np.diff(E)) / np.maximum(E[:-1], 1e-30)
    # relative steps are O(dt) (weights decay at rate <= 2 beta (nu_max+1))
    assert np.max(jumps) <= 4.0 * cfg.beta * (cfg.nu_max + 1) * dt

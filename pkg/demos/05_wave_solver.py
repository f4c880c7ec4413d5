"""Pseudo-spectral wave solver: accuracy, convergence, conservation.

Run:  python3 demos/05_wave_solver.py
"""

import numpy as np

from logwave.grid import SpectralField, TorusGrid, mode, random_field
from logwave.rough import constant_coefficients
from logwave.solver import CauchyProblem, hyperbolic_energy, solve

grid = TorusGrid(1, 256)
a = constant_coefficients(1.0)
k = 4
u0 = mode(grid, k)
zero = SpectralField.zero(grid)
dt = 0.2 * grid.spacing

print("== plane wave over one period ==")
period = 2.0 * np.pi / k
n = int(round(period / dt))
traj = solve(CauchyProblem(a, u0, zero, horizon=n * dt, dt=dt))
exact = np.cos(k * traj.times[-1]) * u0.values
print(f"  max error at t = {traj.times[-1]:.4f}: "
      f"{np.max(np.abs(traj.u_snapshots[-1].values - exact)):.2e}")

print("\n== time-step refinement ==")
errs = []
for d in (dt, dt / 2, dt / 4):
    steps = int(round(0.5 / d))
    tr = solve(CauchyProblem(a, u0, zero, horizon=steps * d, dt=d))
    ex = np.cos(k * tr.times[-1]) * u0.values
    errs.append(np.max(np.abs(tr.u_snapshots[-1].values - ex)))
    print(f"  dt = {d:.5f}: error = {errs[-1]:.3e}")
print(f"  fitted order = {np.polyfit(np.log2([dt, dt/2, dt/4]), np.log2(errs), 1)[0]:.2f}")

print("\n== energy conservation for broadband data ==")
rng = np.random.default_rng(4)
u0 = random_field(grid, rng, band=(1, 8))
ut0 = random_field(grid, rng, band=(1, 8))
traj = solve(CauchyProblem(a, u0, ut0, horizon=400 * dt, dt=dt), snapshot_stride=50)
e0 = hyperbolic_energy(a, 0.0, traj.u_snapshots[0], traj.ut_snapshots[0])
drift = max(abs(hyperbolic_energy(a, float(t), u, ut) - e0) / e0
            for t, u, ut in zip(traj.times, traj.u_snapshots, traj.ut_snapshots))
print(f"  relative energy drift over {traj.times[-1]:.2f} time units: {drift:.2e}")

"""Parameter-dependent paradifferential operators: cutoffs, kernels, calculus.

Run:  python3 demos/04_paradifferential_operators.py
"""

import numpy as np

from logwave.dyadic import GammaScale
from logwave.grid import TorusGrid, l2_norm, random_field
from logwave.parad import (
    ParamSymbol,
    adjoint_defect_probe,
    choose_gamma_mu,
    kernel_bounds_probe,
    make_cutoff,
    mu_for_gamma,
    positivity_probe,
    remainder_probe,
    AlphaSymbols,
)
from logwave.rough import CoefficientProfile, make_coefficients, smooth_in_time
from logwave.spaces import rough_symbol_samples

grid = TorusGrid(1, 1024)
rng = np.random.default_rng(2)

print("== pair-frequency cutoff support ratios ==")
for gamma in (2.0, 4.0, 8.0):
    co = make_cutoff(mu_for_gamma(gamma), gamma, grid)
    e1, e2 = co.support_ratios()
    print(f"  gamma = {gamma:3.0f} (mu = {mu_for_gamma(gamma)}): "
          f"eps1 = {e1:.4f}, eps2 = {e2:.4f}")

print("\n== smoothing-kernel L1 bounds (gamma = 8) ==")
co8 = make_cutoff(2, 8.0, grid)
rep = kernel_bounds_probe(co8, [3 * 2**k for k in range(0, 7)])
for ab, spread in rep.spread("plain").items():
    print(f"  d_xi^{ab[0]} d_x^{ab[1]}: ratio spread = {spread:.2f}")
print(f"  moment identity defect = {rep.moment_defect:.1e}")

print("\n== composition remainder and adjoint defect slopes (M = 4096) ==")
big = TorusGrid(1, 4096)
cob = make_cutoff(2, 8.0, big)
lam = GammaScale(8.0).lambda_weight(np.abs(big.freqs))
f1 = ParamSymbol.from_x_function(
    cob, 1.0 + 0.5 * rough_symbol_samples(4, 4096, seed=1, half_ring=True),
    lam, order_m=1.0)
g0 = ParamSymbol.from_x_function(
    cob, 1.0 + 0.5 * rough_symbol_samples(4, 4096, seed=2, half_ring=True))
comp = remainder_probe(f1, g0, range(5, 10), probes_per_ring=6)
print(f"  (m, m') = (1, 0): slope = {comp.slope:+.3f}  (bound 0.1)")
deep = ParamSymbol.from_x_function(
    cob, 1.0 + 0.5 * rough_symbol_samples(9, 4096, seed=3, per_ring=3))
adj = adjoint_defect_probe(deep, range(5, 10), probes_per_ring=6)
print(f"  adjoint defect (m = 0): slope = {adj.slope:+.3f}  (bound -0.9)")

print("\n== gamma selection and positivity for rough coefficients (M = 512) ==")
g512 = TorusGrid(1, 512)
a = make_coefficients(CoefficientProfile(dim=1, base=2.0, lz_depth=12,
                                         ll_depth=7, seed=3))
sel = choose_gamma_mu(a, g512)
print(f"  selected gamma = {sel.gamma}, mu = {sel.mu} "
      f"(worst probe margin {sel.margins['worst']:.3f})")
co = make_cutoff(sel.mu, sel.gamma, g512)
probes = [random_field(g512, rng) for _ in range(6)]
for nu in (0, 4, 8):
    fam = AlphaSymbols(smooth_in_time(a, 2.0**-nu), sel.gamma, 0.1, co)
    lam1 = positivity_probe(fam.power(-0.5), probes, sel.gamma)
    print(f"  eps = 2^-{nu}: positivity ratio = {lam1:.4f} "
          f"(lambda0/2 = {a.lambda0 / 2:.4f})")

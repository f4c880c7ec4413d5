"""Logarithmic Sobolev norms and LL/LZ modulus estimators.

Run:  python3 demos/02_log_sobolev_norms.py
"""

import numpy as np

from logwave.grid import TorusGrid, mode, random_field
from logwave.spaces import (
    NormSpec,
    dyadic_norm,
    lacunary_samples,
    ll_seminorm,
    lz_dyadic_indicator,
    lz_seminorm,
    sobolev_norm,
)

grid = TorusGrid(1, 1024)
rng = np.random.default_rng(1)

print("== single-mode norms (u = e^{i4x}) ==")
u = mode(grid, 4)
print(f"  H^1 classical      : {sobolev_norm(u, NormSpec(1.0)):.6f}  (= sqrt(17))")
print(f"  H^(0 + log), g = 1 : {sobolev_norm(u, NormSpec(0.0, 1.0, 1.0)):.6f}  (= log 6)")

print("\n== dyadic characterization brackets over 40 random fields ==")
for s, alpha in [(-1.0, 0.0), (0.5, 1.0), (1.0, -1.0)]:
    ratios = []
    for _ in range(40):
        f = random_field(grid, rng)
        spec = NormSpec(s, alpha)
        ratios.append(dyadic_norm(f, spec) / sobolev_norm(f, spec))
    print(f"  (s, alpha) = ({s:+.1f}, {alpha:+.1f}): ratio in "
          f"[{min(ratios):.3f}, {max(ratios):.3f}]")

print("\n== lacunary generators: modulus seminorms across depth ==")
n = 2**15
h = 2.0 * np.pi / n
for depth in (8, 11, 14):
    lz = lacunary_samples("lz", depth, n, seed=7)
    print(f"  depth {depth:2d}: LZ seminorm = {lz_seminorm(lz, h).seminorm:6.3f}  "
          f"dyadic indicator = {lz_dyadic_indicator(lz):6.3f}  "
          f"LL seminorm (diverging) = {ll_seminorm(lz, h).seminorm:6.3f}")

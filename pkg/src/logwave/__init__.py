"""Spectral toolkit for wave operators with log-regular coefficients.

Submodules: grid (torus + FFT fields), dyadic (Littlewood-Paley), spaces
(log-Sobolev norms, LL/LZ moduli), rough (coefficient synthesis and time
mollification), parad (paradifferential calculus with a parameter), solver
(pseudo-spectral wave solver), energy (weighted block energies and loss
meters), suites (verification suites), cli (experiment runner).
"""

from .dyadic import CutoffSystem, GammaScale, block, gamma_block, low_pass
from .grid import SpectralField, TorusGrid, l2_inner, l2_norm, transform
from .spaces import NormSpec, dyadic_norm, ll_seminorm, lz_seminorm, sobolev_norm

__all__ = [
    "CutoffSystem",
    "GammaScale",
    "NormSpec",
    "SpectralField",
    "TorusGrid",
    "block",
    "dyadic_norm",
    "gamma_block",
    "l2_inner",
    "l2_norm",
    "ll_seminorm",
    "low_pass",
    "lz_seminorm",
    "sobolev_norm",
    "transform",
]

__version__ = "0.1.0"

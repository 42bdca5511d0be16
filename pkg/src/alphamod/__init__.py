"""
alphamod: numerical experiments on traces of modulation, alpha-modulation and
Besov spaces over a periodic FFT grid.

The modules build on each other in this order: ``grid`` (sampled functions
and transforms), ``covering`` (frequency coverings), ``bapu`` (windows and
partitions of unity), ``decompose`` (frequency blocks, maximal functions),
``norms``, ``trace`` and ``experiments`` (sweeps and counterexamples).
"""

from .grid import (
    Grid,
    SampledFunction,
    Spectrum,
    forward_transform,
    inverse_transform,
    load_function,
    lp_norm,
    save_function,
    slice_at_zero,
)
from .covering import (
    dyadic_covering,
    grid_alpha_covering,
    japanese_bracket,
    lizorkin_covering,
    shell_alpha_covering,
)
from .bapu import (
    BumpSpec,
    build_dyadic_family,
    build_grid_bapu,
    build_lizorkin_masks,
    build_reduced_bapu,
    build_shell_bapu,
    eta,
    pbapu_constant,
)
from .decompose import block, decompose_all, peetre_maximal
from .norms import SpaceParams, norm
from .trace import extend, trace, trace_ratio
from .experiments import sigma_exponent, sp_exponent

__all__ = [
    "Grid",
    "SampledFunction",
    "Spectrum",
    "forward_transform",
    "inverse_transform",
    "load_function",
    "lp_norm",
    "save_function",
    "slice_at_zero",
    "dyadic_covering",
    "grid_alpha_covering",
    "japanese_bracket",
    "lizorkin_covering",
    "shell_alpha_covering",
    "BumpSpec",
    "build_dyadic_family",
    "build_grid_bapu",
    "build_lizorkin_masks",
    "build_reduced_bapu",
    "build_shell_bapu",
    "eta",
    "pbapu_constant",
    "block",
    "decompose_all",
    "peetre_maximal",
    "SpaceParams",
    "norm",
    "extend",
    "trace",
    "trace_ratio",
    "sigma_exponent",
    "sp_exponent",
]

__version__ = "0.1.0"

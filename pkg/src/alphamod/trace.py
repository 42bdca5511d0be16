"""
The trace ``f(x) -> f(x_bar, 0)`` onto the hyperplane ``x_n = 0``, its right
inverse, and trace/norm ratios.
"""

from dataclasses import dataclass

import numpy as np
import scipy.fft

from .bapu import BumpSpec, eta
from .grid import Grid, SampledFunction, fft_workers, slice_at_zero
from .norms import norm

__all__ = ["TraceReport", "trace", "extension_profile", "extend", "retraction_check",
           "trace_ratio"]


@dataclass(frozen=True)
class TraceReport:
    source_norm: float
    trace_norm: float
    ratio: float
    params_source: object
    params_target: object

    def as_dict(self):
        return {
            "source_norm": self.source_norm,
            "trace_norm": self.trace_norm,
            "ratio": self.ratio,
            "params_source": self.params_source.as_dict(),
            "params_target": self.params_target.as_dict(),
        }


def trace(f):
    """Restriction to ``x_n = 0`` (a linear map onto the reduced grid)."""
    if f.grid.dim < 2:
        raise ValueError("trace needs dimension >= 2")
    return slice_at_zero(f)


def extension_profile(M, L, bump=BumpSpec(), dilation=1.0):
    """``w = F^{-1}[eta(dilation * xi)]`` on the 1-D grid, divided by ``w(0)``.

    The division replaces the assumption that the inverse transform of the
    bump equals 1 at the origin; it keeps both the spectral support and the
    identity ``w(0) = 1``.
    """
    g = Grid(1, M, L)
    spec = eta(dilation * g.xi_axis(), bump).astype(complex)
    w = scipy.fft.ifft(spec, workers=fft_workers()) / g.cell_volume
    return (w / w[0]).real if np.allclose(w.imag, 0, atol=1e-14 * abs(w[0])) else w / w[0]


def extend(g, bump=BumpSpec()):
    """Right inverse of the trace: ``h(x) = w(x_n) g(x_bar)`` on the lifted grid.

    The spectrum of ``h`` sits in ``|xi_n| < 2``, so every frequency-uniform
    block with ``|k_n| >= 3`` vanishes.
    """
    grid = g.grid.lifted()
    w = extension_profile(grid.M, grid.L, bump)
    vals = g.values[..., None] * w.reshape((1,) * g.grid.dim + (-1,))
    return SampledFunction(grid, vals)


def retraction_check(g, bump=BumpSpec()):
    """``max |trace(extend(g)) - g|``."""
    return float(np.max(np.abs(trace(extend(g, bump)).values - g.values), initial=0.0))


def trace_ratio(f, source, target, bump=BumpSpec()):
    """``||trace f||_target / ||f||_source`` with both norms reported."""
    src = norm(f, source, bump=bump).total
    if src == 0:
        raise ValueError("source norm vanishes; the trace ratio is undefined")
    tgt = norm(trace(f), target, bump=bump).total
    return TraceReport(src, tgt, tgt / src, source, target)

"""
Frequency-localization operators and Peetre-type maximal functions.

``block(f, family, label)`` is ``F^{-1} psi_label F f`` for the window
``psi_label`` of a ``WindowFamily``; this single operator covers the
frequency-uniform, alpha-shell, dyadic and Lizorkin decompositions.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.fft

from .grid import SampledFunction, Spectrum, forward_transform, fft_workers, lp_norm_array

__all__ = [
    "BlockSet",
    "block",
    "decompose_all",
    "active_labels",
    "block_lp_norms",
    "peetre_weights",
    "peetre_maximal",
    "convolution_bound_check",
]

# blocks whose window-spectrum product stays below this fraction of max |F f|
# are treated as zero (FFT round-off would otherwise make every label active)
ACTIVE_RTOL = 1e-13


@dataclass(frozen=True, eq=False)
class BlockSet:
    family: object
    blocks: dict = field(repr=False)

    def __len__(self):
        return len(self.blocks)

    def __getitem__(self, label):
        return self.blocks[label]

    def total(self):
        vals = sum(b.values for b in self.blocks.values())
        return SampledFunction(self.family.grid, vals if self.blocks else
                               np.zeros(self.family.grid.shape))


def _spectrum(f):
    return f if isinstance(f, Spectrum) else forward_transform(f)


def _block_from_spectrum(F, window):
    grid = F.grid
    dense = np.zeros(grid.shape, dtype=complex)
    if not window.empty:
        ix = window.ix()
        dense[ix] = F.coefficients[ix] * window.values
    vals = scipy.fft.ifftn(dense, workers=fft_workers()) / grid.cell_volume
    return SampledFunction(grid, vals)


def block(f, family, label):
    """``F^{-1}(psi_label F f)``; ``f`` may be a SampledFunction or its Spectrum."""
    if label not in family:
        raise KeyError(f"label {label} not in family")
    F = _spectrum(f)
    if F.grid != family.grid:
        raise ValueError(f"grid mismatch: {F.grid} vs {family.grid}")
    return _block_from_spectrum(F, family[label])


def active_labels(F, family, rtol=ACTIVE_RTOL):
    """Labels whose window meets the (numerically) nonzero part of the spectrum."""
    coeffs = F.coefficients
    scale = np.max(np.abs(coeffs)) if coeffs.size else 0.0
    if scale == 0:
        return []
    out = []
    for label, w in family.windows.items():
        if w.empty:
            continue
        prod = np.abs(coeffs[w.ix()]) * w.values
        if prod.max() > rtol * scale:
            out.append(label)
    return out


def decompose_all(f, family):
    """All nonzero blocks of ``f``; they sum back to ``f`` for partition families."""
    F = _spectrum(f)
    if F.grid != family.grid:
        raise ValueError(f"grid mismatch: {F.grid} vs {family.grid}")
    return BlockSet(family, {lab: _block_from_spectrum(F, family[lab])
                             for lab in active_labels(F, family)})


def block_lp_norms(f, family, p):
    """``{label: ||block||_p}`` over the active labels.

    At ``p = 2`` the norms come straight from the spectrum (the discrete
    Parseval identity is exact), otherwise each block is transformed back.
    """
    F = _spectrum(f)
    grid = F.grid
    if grid != family.grid:
        raise ValueError(f"grid mismatch: {grid} vs {family.grid}")
    out = {}
    for label in active_labels(F, family):
        w = family[label]
        if p == 2:
            sub = F.coefficients[w.ix()] * w.values
            out[label] = float(np.sqrt(np.sum(np.abs(sub) ** 2) / grid.L ** grid.dim))
        else:
            out[label] = lp_norm_array(_block_from_spectrum(F, w).values, p, grid.cell_volume)
    return out


# --- maximal functions -------------------------------------------------------

def _shift_offsets(grid, shift_set):
    """Signed node offsets (one array per axis) of the admissible shifts."""
    M = grid.M
    m = np.fft.fftfreq(M, d=1.0 / M).astype(int)
    if shift_set == "all":
        keep = np.ones(M, dtype=bool)
    elif shift_set == "lattice":
        step = max(1, int(round(1.0 / grid.spacing)))
        keep = (m % step) == 0
    else:
        raise ValueError(f"shift_set must be 'all' or 'lattice', got {shift_set!r}")
    return m[keep]


def peetre_weights(grid, scale, peetre_r, shift_set="all"):
    """Offsets ``y`` (as signed index tuples) and weights ``1/(1 + |scale y|^{n/r})``."""
    if not peetre_r > 0:
        raise ValueError(f"peetre_r must be positive, got {peetre_r}")
    m = _shift_offsets(grid, shift_set)
    mesh = np.meshgrid(*([m] * grid.dim), indexing="ij")
    offs = np.stack([x.ravel() for x in mesh], axis=-1)
    y = offs * grid.spacing
    w = 1.0 / (1.0 + np.linalg.norm(scale * y, axis=1) ** (grid.dim / peetre_r))
    return offs, w


def peetre_maximal(b, scale, peetre_r, shift_set="all", min_weight=0.0):
    """``sup_y |b(x - y)| / (1 + |scale y|^{n/r})`` over periodic node shifts.

    ``min_weight > 0`` drops shifts whose weight falls below it (the windowed
    approximation meant for 3-D grids). The loop runs over the leading shift
    coordinates; the last coordinate is handled as one gather.
    """
    grid = b.grid
    offs, w = peetre_weights(grid, scale, peetre_r, shift_set)
    if min_weight > 0:
        keep = w >= min_weight
        offs, w = offs[keep], w[keep]
    a = np.abs(b.values)
    M, n = grid.M, grid.dim
    out = a.copy()
    lead = {}
    for o, ww in zip(offs, w):
        lead.setdefault(tuple(o[:-1]), ([], []))
        lead[tuple(o[:-1])][0].append(o[-1])
        lead[tuple(o[:-1])][1].append(ww)
    cols = np.arange(M)
    for head, (last, ww) in lead.items():
        rolled = np.roll(a, head, axis=tuple(range(n - 1))) if n > 1 else a
        idx = (cols[None, :] - np.asarray(last)[:, None]) % M
        cand = rolled[..., idx] * np.asarray(ww)[:, None]
        np.maximum(out, cand.max(axis=-2), out=out)
    return SampledFunction(grid, out)


# --- convolution check -------------------------------------------------------

def _check_support(F, center, R, what, rtol=1e-12):
    grid = F.grid
    pts = np.stack(grid.xi_mesh(), axis=-1)
    outside = np.linalg.norm(pts - np.asarray(center, dtype=float), axis=-1) > R * (1 + 1e-12)
    c = np.abs(F.coefficients)
    if c[outside].max(initial=0.0) > rtol * max(c.max(), 1e-300):
        raise ValueError(f"{what}: spectrum leaves the ball B({tuple(center)}, {R})")


def convolution_bound_check(f, g, center, R, p):
    """``||f * g||_p / (R^{n(1/p - 1)} ||f||_p ||g||_p)`` for spectra inside ``B(center, R)``."""
    if not (0 < p <= 1):
        raise ValueError(f"p must lie in (0, 1], got {p}")
    if f.grid != g.grid:
        raise ValueError("f and g live on different grids")
    F, G = forward_transform(f), forward_transform(g)
    _check_support(F, center, R, "f")
    _check_support(G, center, R, "g")
    grid = f.grid
    conv = scipy.fft.ifftn(F.coefficients * G.coefficients, workers=fft_workers()) / grid.cell_volume
    num = lp_norm_array(conv, p, grid.cell_volume)
    den = R ** (grid.dim * (1.0 / p - 1.0)) * lp_norm_array(f.values, p, grid.cell_volume) \
        * lp_norm_array(g.values, p, grid.cell_volume)
    return num / den

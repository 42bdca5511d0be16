"""
Smooth bump windows and the normalized partitions of unity attached to each
covering, plus the sharp Lizorkin cutoffs.

Windows are stored sparsely: each label keeps the FFT-order node indices of
its support box along every axis and the window values on that box.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .covering import (
    LizorkinIndex,
    dyadic_covering,
    grid_alpha_covering,
    japanese_bracket,
    lizorkin_boxes,
    lizorkin_covering,
    shell_alpha_covering,
)
from .grid import Spectrum, inverse_transform, lp_norm_array

__all__ = [
    "BumpSpec",
    "Window",
    "WindowFamily",
    "eta",
    "build_grid_bapu",
    "build_shell_bapu",
    "build_dyadic_family",
    "build_lizorkin_masks",
    "build_reduced_bapu",
    "pbapu_constant",
    "partition_deviation",
    "support_violations",
]

TRANSITIONS = ("smooth_exp", "raised_cosine")


@dataclass(frozen=True)
class BumpSpec:
    """Radial bump equal to 1 on ``|xi| <= 1`` and 0 on ``|xi| >= 2``."""

    transition: str = "smooth_exp"
    inner_radius: float = 1.0
    outer_radius: float = 2.0

    def __post_init__(self):
        if self.transition not in TRANSITIONS:
            raise ValueError(f"transition must be one of {TRANSITIONS}, got {self.transition!r}")
        if (self.inner_radius, self.outer_radius) != (1.0, 2.0):
            raise ValueError("the bump is fixed to inner radius 1 and outer radius 2")


def _exp_glue(u):
    out = np.zeros_like(u)
    pos = u > 0
    out[pos] = np.exp(-1.0 / u[pos])
    return out


def eta(xi, spec=BumpSpec()):
    """Bump ``eta(|xi|)``: 1 for ``|xi| <= 1``, 0 for ``|xi| >= 2``, monotone between."""
    scalar = np.ndim(xi) == 0
    a = np.abs(np.asarray(xi, dtype=float))
    out = np.zeros_like(a)
    out[a <= 1] = 1.0
    mid = (a > 1) & (a < 2)
    if spec.transition == "smooth_exp":
        u = 2.0 - a[mid]
        g1, g2 = _exp_glue(u), _exp_glue(1.0 - u)
        out[mid] = g1 / (g1 + g2)
    else:
        out[mid] = 0.5 * (1.0 + np.cos(np.pi * (a[mid] - 1.0)))
    return float(out) if scalar else out


@dataclass(frozen=True, eq=False)
class Window:
    """Values of one window on its support box.

    ``index[i]`` holds FFT-order node indices along axis ``i``. ``interior``
    is False when the support reaches the edge of the frequency window, where
    the window is truncated by the grid.
    """

    index: tuple
    values: np.ndarray = field(repr=False)
    interior: bool = True

    @property
    def empty(self):
        return self.values.size == 0

    def ix(self):
        return np.ix_(*self.index)

    def dense(self, shape):
        out = np.zeros(shape)
        if not self.empty:
            out[self.ix()] = self.values
        return out


@dataclass(frozen=True, eq=False)
class WindowFamily:
    covering: object
    kind: str
    grid: object
    windows: dict = field(repr=False)
    bump: BumpSpec = BumpSpec()

    def __len__(self):
        return len(self.windows)

    def __getitem__(self, label):
        return self.windows[label]

    def __contains__(self, label):
        return label in self.windows

    @property
    def labels(self):
        return list(self.windows)

    def region(self, label):
        return self.covering.region(label)

    def dense(self, label):
        return self.windows[label].dense(self.grid.shape)

    def total(self):
        """Pointwise sum of all windows over the frequency nodes."""
        out = np.zeros(self.grid.shape)
        for w in self.windows.values():
            if not w.empty:
                out[w.ix()] += w.values
        return out


# --- helpers -----------------------------------------------------------------

def _axis_support(grid, lo, hi):
    """Signed node indices ``m`` with ``lo < m dxi < hi`` inside ``[-M/2, M/2)``."""
    d = grid.freq_spacing
    m_lo = max(math.floor(lo / d) - 1, -grid.M // 2)
    m_hi = min(math.ceil(hi / d) + 1, grid.M // 2 - 1)
    m = np.arange(m_lo, m_hi + 1)
    x = m * d
    keep = (x > lo - 1e-12 * max(1.0, abs(lo))) & (x < hi + 1e-12 * max(1.0, abs(hi)))
    return m[keep]


def _touches_edge(grid, lo, hi):
    W = grid.window_half_side
    return lo <= -W + grid.freq_spacing or hi >= W - grid.freq_spacing


def _product_window(grid, center, scale, bump):
    """``prod_i eta((xi_i - c_i) / scale)`` on its support box."""
    index, factors, interior = [], [], True
    for c in center:
        lo, hi = c - 2 * scale, c + 2 * scale
        m = _axis_support(grid, lo, hi)
        f = eta((m * grid.freq_spacing - c) / scale, bump)
        nz = f > 0
        m, f = m[nz], f[nz]
        index.append(m % grid.M)
        factors.append(f)
        interior &= not _touches_edge(grid, lo, hi)
    values = factors[0]
    for f in factors[1:]:
        values = np.multiply.outer(values, f)
    return index, np.asarray(values, dtype=float), interior


def _normalize(grid, raw, what):
    denom = np.zeros(grid.shape)
    for index, values, _ in raw.values():
        if values.size:
            denom[np.ix_(*index)] += values
    if np.any(denom <= 0):
        bad = int(np.sum(denom <= 0))
        raise ValueError(f"{what}: partition denominator vanishes at {bad} frequency nodes; "
                         "the covering does not cover the window (check alpha and r)")
    windows = {}
    for label, (index, values, interior) in raw.items():
        if values.size:
            values = values / denom[np.ix_(*index)]
        windows[label] = Window(tuple(index), values, interior)
    return windows


# --- families ----------------------------------------------------------------

def build_grid_bapu(alpha, r, grid, bump=BumpSpec()):
    """p-BAPU ``psi_k = prod_i phi_{k_i} / sum_k prod_i phi_{k_i}`` over the grid alpha-covering."""
    cov = grid_alpha_covering(alpha, r, grid.window_half_side, grid.dim)
    raw = {}
    for label, cube in cov.elements:
        raw[label] = _product_window(grid, cube.center, cube.half_side, bump)
    return WindowFamily(cov, "grid_bapu", grid, _normalize(grid, raw, "grid BAPU"), bump)


def build_shell_bapu(alpha, r, grid, bump=BumpSpec()):
    """p-BAPU over the shell covering, ``phi_kj = prod_i eta((xi_i - k_i) / (r <j>^{a}))``.

    The ``j = 0`` window is scaled by 2 to match its cube ``Q(0, 2)``.
    """
    cov = shell_alpha_covering(alpha, r, grid.window_half_side, grid.dim)
    a = alpha / (1.0 - alpha)
    raw = {}
    for label, cube in cov.elements:
        scale = 2.0 if label.j == 0 else r * japanese_bracket(label.j) ** a
        raw[label] = _product_window(grid, cube.center, scale, bump)
    return WindowFamily(cov, "shell_bapu", grid, _normalize(grid, raw, "shell BAPU"), bump)


def build_dyadic_family(grid, bump=BumpSpec()):
    """Littlewood-Paley family ``phi_0 = eta``, ``phi_k = eta(2^-k .) - eta(2^{1-k} .)``."""
    cov = dyadic_covering(grid.window_half_side, grid.dim)
    xi = grid.xi_axis()
    windows = {}
    for label, region in cov.elements:
        k = label.k
        outer = 2.0 ** (k + 1)
        index = []
        for _ in range(grid.dim):
            m = _axis_support(grid, -outer, outer)
            index.append(m % grid.M)
        mesh = np.meshgrid(*[xi[i] for i in index], indexing="ij")
        rad = np.sqrt(sum(x * x for x in mesh))
        if k == 0:
            vals = eta(rad, bump)
        else:
            vals = eta(rad / 2.0 ** k, bump) - eta(rad / 2.0 ** (k - 1), bump)
        lo = -outer
        windows[label] = Window(tuple(index), vals, not _touches_edge(grid, lo, outer))
    return WindowFamily(cov, "dyadic", grid, windows, bump)


def _lizorkin_shell_index(supnorm):
    out = np.zeros(supnorm.shape, dtype=int)
    big = supnorm > 1
    out[big] = np.ceil(np.log2(supnorm[big]) - 1e-12).astype(int)
    return out


def build_lizorkin_masks(grid, dim=None):
    """0/1 masks of the Lizorkin boxes; every node goes to exactly one ``(k, t)``.

    Ties on box boundaries go to the smaller shell index, then the smaller t.
    The duplicated ``K_0`` therefore lives entirely in label ``(0, 1)``.
    """
    dim = grid.dim if dim is None else dim
    if dim != grid.dim:
        raise ValueError(f"dimension {dim} does not match grid dimension {grid.dim}")
    cov = lizorkin_covering(grid.window_half_side, dim)
    W = grid.window_half_side
    xi = grid.xi_mesh()
    pts = np.stack(xi, axis=-1)
    shell = _lizorkin_shell_index(np.max(np.abs(pts), axis=-1))
    windows = {}
    for k in range(cov.meta["shells"]):
        in_shell = shell == k
        free = in_shell.copy()
        for t, lo, hi in lizorkin_boxes(k, dim):
            inside = free & np.all((pts >= lo - 1e-12) & (pts <= hi + 1e-12), axis=-1)
            free &= ~inside
            label = LizorkinIndex(k, t)
            nz = np.nonzero(inside)
            interior = 2.0 ** k < W
            if len(nz[0]) == 0:
                windows[label] = Window(tuple(np.array([], int) for _ in range(dim)),
                                        np.zeros((0,) * dim), interior)
                continue
            index = tuple(np.unique(ax) for ax in nz)
            sub = inside[np.ix_(*index)].astype(float)
            windows[label] = Window(index, sub, interior)
        if free.any():
            raise AssertionError(f"Lizorkin shell {k}: {int(free.sum())} nodes unassigned")
    return WindowFamily(cov, "lizorkin_sharp", grid, windows)


def build_reduced_bapu(alpha, r, grid, shell=False, bump=BumpSpec()):
    """The grid (or shell) BAPU on the induced ``(n-1)``-dimensional grid."""
    g = grid.reduced()
    if shell:
        return build_shell_bapu(alpha, r, g, bump)
    fam = build_grid_bapu(alpha, r, g, bump)
    return WindowFamily(fam.covering, "reduced_dim_bapu", g, fam.windows, bump)


# --- checks ------------------------------------------------------------------

def partition_deviation(family):
    """``max_node |sum_labels psi - 1|``."""
    return float(np.max(np.abs(family.total() - 1.0)))


def _support_half_side(family, label, reg):
    if family.kind == "shell_bapu" and label.j > 0:
        a = family.covering.alpha / (1 - family.covering.alpha)
        return 2 * family.covering.r * japanese_bracket(label.j) ** a
    if family.kind in ("grid_bapu", "reduced_dim_bapu", "shell_bapu"):
        return 2 * reg.half_side
    # sharp masks live on their box, dyadic windows inside the outer radius
    return reg.half_side


def support_violations(family):
    """Number of labels whose window reaches beyond its nominal support cube
    (the ``eta`` support ``Q(c, 2 R)`` for smooth windows) by more than one
    frequency cell."""
    grid = family.grid
    xi = grid.xi_axis()
    bad = 0
    for label, w in family.windows.items():
        if w.empty:
            continue
        reg = family.region(label)
        c = np.array(reg.center)
        h = _support_half_side(family, label, reg) + grid.freq_spacing
        if any(np.any(np.abs(xi[idx] - c[i]) > h + 1e-9) for i, idx in enumerate(w.index)):
            bad += 1
    return bad


def pbapu_constant(family, p, interior_only=True):
    """``sup_Q |Q|^{1/(p^1) - 1} ||F^{-1} psi_Q||_{p^1}`` over the family.

    Labels whose support reaches the edge of the frequency window are skipped
    by default: the grid truncates those windows, which is not a property of
    the family.
    """
    if not p > 0:
        raise ValueError(f"p must be positive, got {p}")
    pe = min(p, 1.0)
    grid = family.grid
    best = 0.0
    for label, w in family.windows.items():
        if w.empty or (interior_only and not w.interior):
            continue
        kernel = inverse_transform(Spectrum(grid, w.dense(grid.shape)))
        vol = family.region(label).volume
        val = vol ** (1.0 / pe - 1.0) * lp_norm_array(kernel.values, pe, grid.cell_volume)
        best = max(best, val)
    return best


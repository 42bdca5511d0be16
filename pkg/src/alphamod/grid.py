"""
Sampled functions on a periodic box and their discrete Fourier transforms.

The box is ``[-L/2, L/2)^n`` sampled with ``M`` points per axis. Both the
spatial samples and the spectral coefficients are stored in the standard FFT
order: index 0 is the origin (``x = 0`` resp. ``xi = 0``), indices above
``M/2`` wrap to negative coordinates. Arrays have shape ``(M,) * n`` and the
flattened layout is row-major over axes ``1..n``.

The Fourier convention is the angular one,

    (F f)(xi) = int f(x) exp(-i x.xi) dx,
    f(x) = (2 pi)^{-n} int (F f)(xi) exp(i x.xi) dxi,

discretised with cell volume ``(L/M)^n`` in space and ``(2 pi / L)^n`` in
frequency.
"""

import os
from dataclasses import dataclass, field

import numpy as np
import scipy.fft

__all__ = [
    "Grid",
    "SampledFunction",
    "Spectrum",
    "forward_transform",
    "inverse_transform",
    "lp_norm",
    "lp_norm_array",
    "spectrum_l2_norm",
    "slice_at_zero",
    "save_function",
    "load_function",
    "FORMAT_TAG",
]

FORMAT_TAG = "AMGRID1"


def fft_workers():
    """Worker count for scipy.fft, capped by ``ALPHAMOD_THREADS``."""
    env = os.environ.get("ALPHAMOD_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


@dataclass(frozen=True)
class Grid:
    """Periodic sampling box ``[-L/2, L/2)^dim`` with ``M`` nodes per axis."""

    dim: int
    M: int
    L: float

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise ValueError(f"dim must be a positive integer, got {self.dim}")
        if int(self.M) != self.M or self.M < 8 or self.M % 2:
            raise ValueError(f"M must be an even integer >= 8, got {self.M}")
        if not self.L > 0:
            raise ValueError(f"L must be positive, got {self.L}")
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "M", int(self.M))
        object.__setattr__(self, "L", float(self.L))

    @property
    def shape(self):
        return (self.M,) * self.dim

    @property
    def spacing(self):
        return self.L / self.M

    @property
    def cell_volume(self):
        return self.spacing ** self.dim

    @property
    def freq_spacing(self):
        return 2 * np.pi / self.L

    @property
    def window_half_side(self):
        """Half-side of the cube of representable frequencies, ``pi M / L``."""
        return np.pi * self.M / self.L

    def x_axis(self):
        """1-D spatial node coordinates in FFT order (index 0 is x = 0)."""
        return np.fft.fftfreq(self.M, d=1.0 / self.L)

    def xi_axis(self):
        """1-D frequency node coordinates in FFT order (index 0 is xi = 0)."""
        return 2 * np.pi * np.fft.fftfreq(self.M, d=self.spacing)

    def x_mesh(self):
        return np.meshgrid(*([self.x_axis()] * self.dim), indexing="ij")

    def xi_mesh(self):
        return np.meshgrid(*([self.xi_axis()] * self.dim), indexing="ij")

    def reduced(self):
        """The induced grid on the hyperplane ``x_n = 0``."""
        if self.dim < 2:
            raise ValueError("cannot reduce a 1-dimensional grid")
        return Grid(self.dim - 1, self.M, self.L)

    def lifted(self):
        return Grid(self.dim + 1, self.M, self.L)

    def xi_index(self, xi):
        """Signed node index of frequency ``xi`` (rounded to the nearest node)."""
        return int(round(xi / self.freq_spacing))

    def header(self):
        return f"{self.dim},{self.M},{self.L!r}"


def _check_values(grid, values, what):
    values = np.asarray(values, dtype=complex)
    if values.size != grid.M ** grid.dim:
        raise ValueError(
            f"{what} needs {grid.M ** grid.dim} samples, got {values.size}")
    return values.reshape(grid.shape)


@dataclass(frozen=True, eq=False)
class SampledFunction:
    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "values",
                           _check_values(self.grid, self.values, "SampledFunction"))

    def __add__(self, other):
        _same_grid(self, other)
        return SampledFunction(self.grid, self.values + other.values)

    def __sub__(self, other):
        _same_grid(self, other)
        return SampledFunction(self.grid, self.values - other.values)

    def __mul__(self, c):
        return SampledFunction(self.grid, self.values * c)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class Spectrum:
    grid: Grid
    coefficients: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "coefficients",
                           _check_values(self.grid, self.coefficients, "Spectrum"))


def _same_grid(a, b):
    if a.grid != b.grid:
        raise ValueError(f"grid mismatch: {a.grid} vs {b.grid}")


def forward_transform(f):
    """Discrete approximation of the Fourier transform of ``f``."""
    g = f.grid
    coeffs = scipy.fft.fftn(f.values, workers=fft_workers()) * g.cell_volume
    return Spectrum(g, coeffs)


def inverse_transform(F):
    g = F.grid
    values = scipy.fft.ifftn(F.coefficients, workers=fft_workers()) / g.cell_volume
    return SampledFunction(g, values)


def lp_norm_array(values, p, cell_volume):
    """Quadrature L^p (quasi-)norm of raw samples with the given cell volume."""
    if not p > 0:
        raise ValueError(f"p must be positive, got {p}")
    a = np.abs(values)
    if np.isinf(p):
        return float(a.max()) if a.size else 0.0
    m = a.max() if a.size else 0.0
    if m == 0:
        return 0.0
    # rescale by the max so that a**p cannot under/overflow for small p
    s = np.sum((a / m) ** p) * cell_volume
    return float(m * s ** (1.0 / p))


def lp_norm(f, p):
    """``(sum |f(x_i)|^p (L/M)^n)^{1/p}``; ``max |f|`` at ``p = inf``.

    For ``p < 1`` this is a quasi-norm.
    """
    return lp_norm_array(f.values, p, f.grid.cell_volume)


def spectrum_l2_norm(F):
    """``(sum |F(xi)|^2 (2 pi / L)^n)^{1/2}``, so that ``||f||_2 = (2pi)^{-n/2} ||F f||_2``."""
    g = F.grid
    return float(np.sqrt(np.sum(np.abs(F.coefficients) ** 2) * g.freq_spacing ** g.dim))


def slice_at_zero(f):
    """Restriction ``f(x_bar, 0)`` to the hyperplane ``x_n = 0``."""
    if f.grid.dim < 2:
        raise ValueError("slice_at_zero needs dim >= 2")
    return SampledFunction(f.grid.reduced(), f.values[..., 0])


# --- serialization -----------------------------------------------------------

def save_function(path, f, fmt="csv"):
    """Write ``f`` in the AMGRID1 format, either ``csv`` or ``binary``.

    CSV layout::

        AMGRID1
        n,M,L
        <n>,<M>,<L>
        index,re,im
        0,<re>,<im>
        ...

    The binary variant carries the same three header lines followed by the
    row-major complex128 little-endian samples.
    """
    head = f"{FORMAT_TAG}\nn,M,L\n{f.grid.header()}\n"
    flat = f.values.ravel()
    if fmt == "csv":
        with open(path, "w") as fh:
            fh.write(head)
            fh.write("index,re,im\n")
            for i, v in enumerate(flat):
                fh.write(f"{i},{float(v.real)!r},{float(v.imag)!r}\n")
    elif fmt == "binary":
        with open(path, "wb") as fh:
            fh.write(head.encode("ascii"))
            fh.write(flat.astype("<c16").tobytes())
    else:
        raise ValueError(f"unknown format {fmt!r}")


def load_function(path):
    with open(path, "rb") as fh:
        raw = fh.read()
    lines = raw.split(b"\n", 3)
    if len(lines) < 4 or lines[0].decode("ascii", "replace").strip() != FORMAT_TAG:
        raise ValueError(f"{path}: not an {FORMAT_TAG} file")
    if lines[1].strip() != b"n,M,L":
        raise ValueError(f"{path}: bad header line {lines[1]!r}")
    n, M, L = lines[2].decode("ascii").split(",")
    grid = Grid(int(n), int(M), float(L))
    body = lines[3]
    size = grid.M ** grid.dim
    if body.startswith(b"index,re,im"):
        values = np.zeros(size, dtype=complex)
        seen = np.zeros(size, dtype=bool)
        for lineno, line in enumerate(body.decode("ascii").splitlines()[1:], start=5):
            if not line.strip():
                continue
            try:
                i, re, im = line.split(",")
                i = int(i)
                values[i] = complex(float(re), float(im))
            except (ValueError, IndexError) as exc:
                raise ValueError(f"{path}:{lineno}: bad row {line!r}") from exc
            seen[i] = True
        if not seen.all():
            raise ValueError(f"{path}: {int((~seen).sum())} samples missing")
    else:
        if len(body) != 16 * size:
            raise ValueError(f"{path}: expected {16 * size} payload bytes, got {len(body)}")
        values = np.frombuffer(body, dtype="<c16").astype(complex)
    return SampledFunction(grid, values)

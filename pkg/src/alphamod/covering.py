"""
Frequency coverings: the grid alpha-covering, the shell alpha-covering, the
Lizorkin decomposition and the dyadic covering.

Every covering is restricted to the frequency window ``[-W, W]^n``: only the
elements meeting the window are emitted. ``Q(c, R)`` denotes the closed cube
with center ``c`` and half-side ``R``.
"""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Cube",
    "Ball",
    "Annulus",
    "GridIndex",
    "ShellIndex",
    "LizorkinIndex",
    "DyadicIndex",
    "Covering",
    "japanese_bracket",
    "r_threshold",
    "shell_count",
    "grid_alpha_covering",
    "shell_alpha_covering",
    "lizorkin_covering",
    "lizorkin_boxes",
    "lizorkin_T",
    "dyadic_covering",
    "scan_points",
    "overlap_counts",
    "max_overlap",
    "coverage_gap",
    "neighbour_count",
    "volume_ratio_C",
    "shell_radius_ratio_C",
]


def japanese_bracket(v):
    """``<v> = (1 + |v|^2)^{1/2}``; the last axis of ``v`` is the vector axis."""
    v = np.asarray(v, dtype=float)
    if v.ndim == 0:
        return float(np.sqrt(1.0 + v * v))
    out = np.sqrt(1.0 + np.sum(v * v, axis=-1))
    return float(out) if out.ndim == 0 else out


# --- geometry ----------------------------------------------------------------

@dataclass(frozen=True)
class Cube:
    center: tuple
    half_side: float

    def __post_init__(self):
        if not self.half_side > 0:
            raise ValueError(f"half_side must be positive, got {self.half_side}")
        object.__setattr__(self, "center", tuple(float(c) for c in self.center))

    @property
    def dim(self):
        return len(self.center)

    @property
    def volume(self):
        return (2.0 * self.half_side) ** self.dim

    @property
    def inradius(self):
        return self.half_side

    @property
    def circumradius(self):
        return self.half_side * math.sqrt(self.dim)

    def corners(self):
        c = np.array(self.center)
        signs = np.array(list(itertools.product((-1.0, 1.0), repeat=self.dim)))
        return c + self.half_side * signs

    def contains(self, points, tol=1e-12):
        """Closed containment for an ``(m, n)`` array of points."""
        d = np.abs(np.asarray(points) - np.array(self.center))
        return np.all(d <= self.half_side * (1 + tol) + tol, axis=-1)

    def dilate(self, factor):
        return Cube(self.center, self.half_side * factor)

    @property
    def bounds(self):
        c = np.array(self.center)
        return c - self.half_side, c + self.half_side


@dataclass(frozen=True)
class Ball:
    """Open ball ``|xi| < radius`` around the origin."""

    dim: int
    radius: float

    @property
    def center(self):
        return (0.0,) * self.dim

    @property
    def half_side(self):
        return self.radius

    @property
    def volume(self):
        return math.pi ** (self.dim / 2) / math.gamma(self.dim / 2 + 1) * self.radius ** self.dim

    def contains(self, points):
        return np.linalg.norm(np.asarray(points), axis=-1) < self.radius

    @property
    def bounds(self):
        return np.full(self.dim, -self.radius), np.full(self.dim, self.radius)


@dataclass(frozen=True)
class Annulus:
    """Open annulus ``inner < |xi| < outer``."""

    dim: int
    inner: float
    outer: float

    @property
    def center(self):
        return (0.0,) * self.dim

    @property
    def half_side(self):
        return self.outer

    @property
    def volume(self):
        unit = math.pi ** (self.dim / 2) / math.gamma(self.dim / 2 + 1)
        return unit * (self.outer ** self.dim - self.inner ** self.dim)

    def contains(self, points):
        r = np.linalg.norm(np.asarray(points), axis=-1)
        return (r > self.inner) & (r < self.outer)

    @property
    def bounds(self):
        return np.full(self.dim, -self.outer), np.full(self.dim, self.outer)


# --- labels ------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class GridIndex:
    k: tuple

    kind = "grid"

    def __str__(self):
        return ":".join(str(int(x)) for x in self.k)


@dataclass(frozen=True, order=True)
class ShellIndex:
    j: int
    k: tuple

    kind = "shell"

    def __str__(self):
        return f"{self.j}|" + ":".join(f"{x:.12g}" for x in self.k)


@dataclass(frozen=True, order=True)
class LizorkinIndex:
    k: int
    t: int

    kind = "lizorkin"

    def __str__(self):
        return f"{self.k}:{self.t}"


@dataclass(frozen=True, order=True)
class DyadicIndex:
    k: int

    kind = "dyadic"

    def __str__(self):
        return str(self.k)


@dataclass(frozen=True, eq=False)
class Covering:
    """A labelled family of frequency regions restricted to ``[-W, W]^n``.

    ``n0`` is the recorded overlap bound: ``max_overlap`` over any scan must
    not exceed it.
    """

    kind: str
    dim: int
    alpha: float
    r: float
    window_half_side: float
    elements: tuple = field(repr=False)
    n0: int = 0
    meta: dict = field(default_factory=dict, repr=False)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def labels(self):
        return [lab for lab, _ in self.elements]

    def region(self, label):
        for lab, reg in self.elements:
            if lab == label:
                return reg
        raise KeyError(label)

    def as_dict(self):
        return dict(self.elements)


# --- admissibility thresholds ------------------------------------------------

def r_threshold(alpha, kind="grid"):
    """Smallest accepted cube-radius parameter ``r`` for a covering family.

    Grid covering: 1/2 at alpha = 0, 1 otherwise. Shell covering: consecutive
    shells are ``(1/(1-alpha)) j^{alpha/(1-alpha)}`` apart asymptotically while
    the facing half-sides add up to ``2 r j^{alpha/(1-alpha)}``, hence
    ``max(1, 1/(2(1-alpha)))``.
    """
    if kind == "grid":
        return 0.5 if alpha == 0 else 1.0
    if kind == "shell":
        return max(1.0, 1.0 / (2.0 * (1.0 - alpha)))
    raise ValueError(f"unknown covering kind {kind!r}")


def _check_alpha(alpha, allow_zero=True):
    if not (0 <= alpha < 1):
        raise ValueError(f"alpha must lie in [0, 1), got {alpha}")
    if not allow_zero and alpha == 0:
        raise ValueError("the shell covering degenerates at alpha = 0; "
                         "use the grid covering")


def _window_ok(window):
    if not window > 0:
        raise ValueError(f"window half-side must be positive, got {window}")


# --- grid alpha-covering -----------------------------------------------------

def grid_centers(k, alpha):
    """Centers ``|k|^{alpha/(1-alpha)} k`` (0 at k = 0) for an ``(m, n)`` array."""
    k = np.asarray(k, dtype=float)
    a = alpha / (1.0 - alpha)
    if a == 0:
        return k.copy()
    nk = np.linalg.norm(k, axis=-1, keepdims=True)
    return np.where(nk > 0, nk ** a, 0.0) * k


def grid_half_sides(k, alpha, r):
    a = alpha / (1.0 - alpha)
    return r * japanese_bracket(np.asarray(k, dtype=float)) ** a


def _grid_label_range(alpha, r, window, dim):
    """Largest ``|k_i|`` whose cube can still meet the window."""
    a = alpha / (1.0 - alpha)
    K = 1
    while True:
        # |c_i| >= |k_i|^{1+a}; R <= r (1 + dim K^2)^{a/2}
        if K ** (1 + a) - r * (1 + dim * K * K) ** (a / 2) > window:
            return K
        K += 1


def grid_alpha_covering(alpha, r, window, dim):
    """Cubes ``Q_k = Q(|k|^{a} k, r <k>^{a})``, ``a = alpha/(1-alpha)``, meeting the window."""
    _check_alpha(alpha)
    _window_ok(window)
    if r < r_threshold(alpha, "grid"):
        raise ValueError(f"r = {r} is below the admissibility threshold "
                         f"{r_threshold(alpha, 'grid')} for alpha = {alpha}")
    K = _grid_label_range(alpha, r, window, dim)
    ks = np.array(list(itertools.product(range(-K, K + 1), repeat=dim)), dtype=float)
    centers = grid_centers(ks, alpha)
    halves = grid_half_sides(ks, alpha, r)
    meets = np.all(np.abs(centers) - halves[:, None] <= window, axis=1)
    elements = tuple(
        (GridIndex(tuple(int(x) for x in k)), Cube(tuple(c), float(h)))
        for k, c, h, m in zip(ks, centers, halves, meets) if m)
    if alpha == 0:
        n0 = (math.floor(2 * r) + 1) ** dim
    else:
        n0 = None
    cov = Covering("grid", dim, float(alpha), float(r), float(window), elements, 0)
    if n0 is None:
        n0 = neighbour_count(cov)
    return Covering("grid", dim, float(alpha), float(r), float(window), elements, n0,
                    {"label_range": K})


# --- shell alpha-covering ----------------------------------------------------

def shell_count(j, r):
    """``N_j = ceil(j / r)``: each shell face is split into ``2 N_j`` intervals."""
    return max(1, math.ceil(j / r - 1e-12))


def shell_points(j, alpha, r, dim):
    """The label set ``K_j``: split points with sup-norm ``j^{1/(1-alpha)}``."""
    rho = j ** (1.0 / (1.0 - alpha))
    N = shell_count(j, r)
    s = np.array(list(itertools.product(range(-N, N + 1), repeat=dim)))
    s = s[np.max(np.abs(s), axis=1) == N]
    return s * (rho / N)


def shell_alpha_covering(alpha, r, window, dim):
    """Shell covering: ``Q(0, 2)`` plus ``Q(k, r j^{alpha/(1-alpha)})`` for ``k`` in ``K_j``."""
    _check_alpha(alpha, allow_zero=False)
    _window_ok(window)
    if r < r_threshold(alpha, "shell"):
        raise ValueError(f"r = {r} is below the admissibility threshold "
                         f"{r_threshold(alpha, 'shell')} for alpha = {alpha}")
    a = alpha / (1.0 - alpha)
    elements = [(ShellIndex(0, (0.0,) * dim), Cube((0.0,) * dim, 2.0))]
    j = 1
    while True:
        rho = j ** (1.0 / (1.0 - alpha))
        half = r * j ** a
        if rho - half > window:
            break
        for k in shell_points(j, alpha, r, dim):
            if np.all(np.abs(k) - half <= window):
                elements.append((ShellIndex(j, tuple(float(x) for x in k)),
                                 Cube(tuple(k), half)))
        j += 1
    cov = Covering("shell", dim, float(alpha), float(r), float(window), tuple(elements), 0)
    return Covering("shell", dim, float(alpha), float(r), float(window), tuple(elements),
                    neighbour_count(cov), {"max_shell": j - 1})


# --- Lizorkin decomposition --------------------------------------------------

def lizorkin_T(dim):
    return 4 ** dim - 2 ** dim


def lizorkin_boxes(k, dim):
    """Boxes ``P_{k,t}`` of the sup-norm shell ``K_k`` as ``(t, lower, upper)``.

    Each axis of ``[-2^k, 2^k]`` is cut at ``0`` and ``+-2^{k-1}``; the
    ``2^n`` boxes touching the n-th axis (first ``n-1`` coordinates inside
    ``[-2^{k-1}, 2^{k-1}]``) come first, both groups in lexicographic order.
    For ``k = 0`` every ``t`` maps to ``K_0 = [-1, 1]^n``.
    """
    T = lizorkin_T(dim)
    if k == 0:
        lo, hi = -np.ones(dim), np.ones(dim)
        return [(t, lo.copy(), hi.copy()) for t in range(1, T + 1)]
    h = 2.0 ** (k - 1)
    cuts = [(-2 * h, -h), (-h, 0.0), (0.0, h), (h, 2 * h)]
    near, rest = [], []
    for idx in itertools.product(range(4), repeat=dim):
        if all(i in (1, 2) for i in idx):
            continue
        lo = np.array([cuts[i][0] for i in idx])
        hi = np.array([cuts[i][1] for i in idx])
        if all(i in (1, 2) for i in idx[:-1]) and idx[-1] in (0, 3):
            near.append((lo, hi))
        else:
            rest.append((lo, hi))
    return [(t, lo, hi) for t, (lo, hi) in enumerate(near + rest, start=1)]


def _is_power_of_two(x):
    if not x > 0:
        return False
    e = math.log2(x)
    return abs(e - round(e)) < 1e-12


def lizorkin_covering(window, dim):
    """Lizorkin shells ``K_0 .. K_K`` with ``2^K = window``, split into ``T = 4^n - 2^n`` boxes."""
    _window_ok(window)
    if not _is_power_of_two(window) or window < 1:
        raise ValueError(f"Lizorkin covering needs a power-of-two window >= 1, got {window}")
    K = int(round(math.log2(window)))
    elements = []
    for k in range(K + 1):
        for t, lo, hi in lizorkin_boxes(k, dim):
            elements.append((LizorkinIndex(k, t),
                             Cube(tuple((lo + hi) / 2), float((hi - lo)[0] / 2))))
    # closed boxes with disjoint interiors: a point lies in at most 2^n of them
    return Covering("lizorkin", dim, 1.0, 1.0, float(window), tuple(elements),
                    2 ** dim, {"shells": K + 1, "T": lizorkin_T(dim)})


# --- dyadic covering ---------------------------------------------------------

def dyadic_covering(window, dim):
    """Ball ``|xi| < 2`` and open annuli ``2^{k-1} < |xi| < 2^{k+1}`` meeting the window."""
    _window_ok(window)
    elements = [(DyadicIndex(0), Ball(dim, 2.0))]
    k = 1
    while 2.0 ** (k - 1) < window * math.sqrt(dim):
        elements.append((DyadicIndex(k), Annulus(dim, 2.0 ** (k - 1), 2.0 ** (k + 1))))
        k += 1
    return Covering("dyadic", dim, 1.0, 1.0, float(window), tuple(elements), 2,
                    {"max_k": k - 1})


# --- scans -------------------------------------------------------------------

def scan_points(covering, grid=None, per_axis=None):
    """Scan points in the window: the grid's frequency nodes, or a uniform mesh."""
    W = covering.window_half_side
    if grid is not None:
        pts = np.stack([x.ravel() for x in grid.xi_mesh()], axis=-1)
        return pts[np.all(np.abs(pts) <= W + 1e-12, axis=1)]
    if per_axis is None:
        per_axis = {1: 2001, 2: 161, 3: 41}.get(covering.dim, 21)
    ax = np.linspace(-W, W, per_axis)
    mesh = np.meshgrid(*([ax] * covering.dim), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def overlap_counts(covering, points):
    counts = np.zeros(len(points), dtype=int)
    for _, reg in covering.elements:
        lo, hi = reg.bounds
        sel = np.all((points >= lo - 1e-9) & (points <= hi + 1e-9), axis=1)
        if sel.any():
            idx = np.nonzero(sel)[0]
            counts[idx] += reg.contains(points[idx])
    return counts


def _distinct_elements(covering):
    # K_0 is repeated across t in the Lizorkin covering; count it once
    seen, out = set(), []
    for lab, reg in covering.elements:
        key = (type(reg).__name__, reg.center, reg.half_side, getattr(reg, "inner", None))
        if key not in seen:
            seen.add(key)
            out.append((lab, reg))
    return Covering(covering.kind, covering.dim, covering.alpha, covering.r,
                    covering.window_half_side, tuple(out), covering.n0)


def max_overlap(covering, points=None, grid=None):
    """Largest number of (distinct) elements containing a scan point."""
    if points is None:
        points = scan_points(covering, grid)
    return int(overlap_counts(_distinct_elements(covering), points).max())


def coverage_gap(covering, points=None, grid=None):
    """Fraction of scan points contained in no element."""
    if points is None:
        points = scan_points(covering, grid)
    return float(np.mean(overlap_counts(covering, points) == 0))


def neighbour_count(covering):
    """``max_Q #{Q' : Q meets Q'}`` over cube elements (itself included)."""
    cubes = [reg for _, reg in covering.elements if isinstance(reg, Cube)]
    if not cubes:
        return 0
    c = np.array([q.center for q in cubes])
    h = np.array([q.half_side for q in cubes])
    best = 0
    for i in range(len(cubes)):
        meet = np.all(np.abs(c - c[i]) <= (h + h[i])[:, None] * (1 + 1e-12), axis=1)
        best = max(best, int(meet.sum()))
    return best


def volume_ratio_C(covering):
    """``max(|Q| / <xi>^{alpha n}, <xi>^{alpha n} / |Q|)`` over elements and cube corners."""
    a, n = covering.alpha, covering.dim
    worst = 1.0
    for _, reg in covering.elements:
        if not isinstance(reg, Cube):
            continue
        pts = np.vstack([reg.corners(), np.array(reg.center)[None]])
        w = japanese_bracket(pts) ** (a * n)
        ratio = reg.volume / w
        worst = max(worst, float(np.max(ratio)), float(np.max(1 / ratio)))
    return worst


def shell_radius_ratio_C(covering):
    """``max(|xi| / j^{1/(1-alpha)}, j^{1/(1-alpha)} / |xi|)`` over shell cubes with ``j >= 1``."""
    a = covering.alpha
    worst = 1.0
    for lab, reg in covering.elements:
        if lab.j == 0:
            continue
        rho = lab.j ** (1.0 / (1.0 - a))
        r = np.linalg.norm(reg.corners(), axis=1)
        r = r[r > 0]
        worst = max(worst, float(np.max(r / rho)), float(np.max(rho / r)))
    return worst

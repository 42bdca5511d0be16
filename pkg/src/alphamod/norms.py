"""
Modulation, anisotropic modulation, alpha-modulation and Besov-type norms of
sampled functions, aggregated from block L^p norms.

Every norm is a weighted mixed sequence norm of the block norms
``||block_label f||_p``. A ``NormReport`` keeps, per active label, the
amplitude weight ``a`` and the block norm ``b`` so that the total is the
``l^q`` norm of ``a * b`` (nested ``l^r(l^q)`` for the anisotropic kind).
"""

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np
from scipy.special import logsumexp

from .bapu import (
    BumpSpec,
    build_dyadic_family,
    build_grid_bapu,
    build_lizorkin_masks,
    build_shell_bapu,
)
from .covering import japanese_bracket, r_threshold
from .decompose import block_lp_norms
from .grid import Spectrum, forward_transform

__all__ = [
    "KINDS",
    "SpaceParams",
    "NormReport",
    "get_family",
    "lq_aggregate",
    "norm",
    "modulation_norm",
    "anisotropic_modulation_norm",
    "alpha_modulation_norm_grid",
    "alpha_modulation_norm_shell",
    "besov_norm",
    "tilde_besov_norm",
    "lizorkin_besov_norm",
    "two_index_besov_norm",
]

KINDS = (
    "modulation",
    "modulation_anisotropic",
    "alpha_grid",
    "alpha_shell",
    "besov",
    "besov_tilde",
    "besov_lizorkin",
    "besov_two_index",
    "besov_two_index_tilde",
)

_NEEDS = {
    "modulation": (),
    "modulation_anisotropic": ("third_r",),
    "alpha_grid": ("alpha",),
    "alpha_shell": ("alpha",),
    "besov": (),
    "besov_tilde": (),
    "besov_lizorkin": (),
    "besov_two_index": ("s2",),
    "besov_two_index_tilde": ("s2",),
}
_OPTIONAL = ("alpha", "third_r", "s2")


def _positive_index(name, v):
    if not (v > 0):
        raise ValueError(f"{name} must lie in (0, inf], got {v}")


@dataclass(frozen=True)
class SpaceParams:
    """Descriptor of a function space: kind, ``p``, ``q``, ``s`` and the
    kind-specific ``alpha`` / ``third_r`` / ``s2``. ``r_cov`` overrides the
    covering radius parameter of the alpha kinds."""

    kind: str
    p: float
    q: float
    s: float = 0.0
    alpha: float = None
    third_r: float = None
    s2: float = None
    r_cov: float = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown space kind {self.kind!r}; expected one of {KINDS}")
        _positive_index("p", self.p)
        _positive_index("q", self.q)
        needs = _NEEDS[self.kind]
        for name in _OPTIONAL:
            present = getattr(self, name) is not None
            if name in needs and not present:
                raise ValueError(f"kind {self.kind!r} requires {name}")
            if name not in needs and present:
                raise ValueError(f"kind {self.kind!r} does not take {name}")
        if self.third_r is not None:
            _positive_index("third_r", self.third_r)
        if self.alpha is not None:
            if self.kind == "alpha_grid" and not (0 <= self.alpha < 1):
                raise ValueError(f"alpha must lie in [0, 1) (use besov for alpha = 1), got {self.alpha}")
            if self.kind == "alpha_shell" and not (0 < self.alpha < 1):
                raise ValueError(f"alpha must lie in (0, 1) for the shell norm, got {self.alpha}")
        if self.kind in ("besov_lizorkin", "besov_two_index", "besov_two_index_tilde"):
            if not (1 < self.p < math.inf):
                raise ValueError(f"{self.kind} needs 1 < p < inf, got p = {self.p}")

    def with_(self, **kw):
        return replace(self, **kw)

    def as_dict(self):
        d = {"kind": self.kind, "p": self.p, "q": self.q, "s": self.s}
        for name in _OPTIONAL + ("r_cov",):
            v = getattr(self, name)
            if v is not None:
                d[name] = v
        return d


@dataclass(frozen=True, eq=False)
class NormReport:
    params: SpaceParams
    total: float
    per_label: dict = field(repr=False)

    def recompute(self):
        return _aggregate(self.params, self.per_label)


# --- aggregation -------------------------------------------------------------

def lq_aggregate(amps, q):
    """``(sum_i amps_i^q)^{1/q}`` for nonnegative amplitudes, sup at ``q = inf``.

    Sums run in log space so tiny ``q`` cannot overflow the powers.
    """
    a = np.asarray(list(amps), dtype=float)
    a = a[a > 0]
    if a.size == 0:
        return 0.0
    if math.isinf(q):
        return float(a.max())
    return float(math.exp(logsumexp(q * np.log(a)) / q))


def _aggregate(params, per_label):
    amps = {lab: w * b for lab, (w, b) in per_label.items()}
    if params.kind != "modulation_anisotropic":
        return lq_aggregate(amps.values(), params.q)
    slabs = {}
    for lab, v in amps.items():
        slabs.setdefault(lab.k[-1], []).append(v)
    inner = [lq_aggregate(vs, params.q) for vs in slabs.values()]
    return lq_aggregate(inner, params.third_r)


# --- families ----------------------------------------------------------------

@lru_cache(maxsize=16)
def get_family(kind, grid, alpha=0.0, r=0.5, bump=BumpSpec()):
    """Cached window family. ``kind`` is one of grid, shell, dyadic, lizorkin."""
    if kind == "grid":
        return build_grid_bapu(alpha, r, grid, bump)
    if kind == "shell":
        return build_shell_bapu(alpha, r, grid, bump)
    if kind == "dyadic":
        return build_dyadic_family(grid, bump)
    if kind == "lizorkin":
        return build_lizorkin_masks(grid)
    raise ValueError(f"unknown family kind {kind!r}")


def _family_for(params, grid, bump):
    k = params.kind
    if k in ("modulation", "modulation_anisotropic"):
        r = 0.5 if params.r_cov is None else params.r_cov
        return get_family("grid", grid, 0.0, r, bump)
    if k == "alpha_grid":
        r = r_threshold(params.alpha, "grid") if params.r_cov is None else params.r_cov
        return get_family("grid", grid, params.alpha, r, bump)
    if k == "alpha_shell":
        r = r_threshold(params.alpha, "shell") if params.r_cov is None else params.r_cov
        return get_family("shell", grid, params.alpha, r, bump)
    if k in ("besov", "besov_tilde"):
        return get_family("dyadic", grid, bump=bump)
    return get_family("lizorkin", grid)


def _amplitude(params, label, n):
    """Weight ``a`` with term ``(a ||block||_p)^q`` for one label."""
    k, s, q = params.kind, params.s, params.q
    if k == "modulation":
        return japanese_bracket(label.k) ** s
    if k == "modulation_anisotropic":
        return japanese_bracket(label.k[:-1]) ** s if n > 1 else 1.0
    if k == "alpha_grid":
        return japanese_bracket(label.k) ** (s / (1 - params.alpha))
    if k == "alpha_shell":
        return japanese_bracket(label.j) ** (s / (1 - params.alpha))
    if k == "besov":
        return 2.0 ** (s * label.k)
    if k == "besov_tilde":
        return _tilde_factor(label.k, q) * 2.0 ** (s * label.k)
    if k == "besov_lizorkin":
        return 2.0 ** (s * label.k)
    near_axis = label.t <= 2 ** n
    if near_axis:
        f = _tilde_factor(label.k, q) if k == "besov_two_index_tilde" else 1.0
        return f * 2.0 ** (s * label.k)
    return 2.0 ** (params.s2 * label.k)


def _tilde_factor(k, q):
    # k^{1/q}; the k = 0 term carries weight 0
    if k == 0:
        return 0.0
    return 1.0 if math.isinf(q) else k ** (1.0 / q)


def norm(f, params, family=None, bump=BumpSpec()):
    """Norm of ``f`` (SampledFunction or Spectrum) in the space ``params``."""
    F = f if isinstance(f, Spectrum) else forward_transform(f)
    grid = F.grid
    if params.kind == "modulation_anisotropic" and grid.dim < 2:
        raise ValueError("the anisotropic modulation norm needs dimension >= 2")
    if family is None:
        family = _family_for(params, grid, bump)
    blocks = block_lp_norms(F, family, params.p)
    per_label = {lab: (_amplitude(params, lab, grid.dim), b) for lab, b in blocks.items()}
    return NormReport(params, _aggregate(params, per_label), per_label)


# --- named entry points ------------------------------------------------------

def modulation_norm(f, p, q, s=0.0, family=None):
    return norm(f, SpaceParams("modulation", p, q, s), family)


def anisotropic_modulation_norm(f, p, q, third_r, s=0.0, family=None):
    """Anisotropic norm with ``l^{third_r}`` over ``k_n`` and weight ``<k_bar>^s``."""
    return norm(f, SpaceParams("modulation_anisotropic", p, q, s, third_r=third_r), family)


def alpha_modulation_norm_grid(f, p, q, s, alpha, family=None):
    return norm(f, SpaceParams("alpha_grid", p, q, s, alpha=alpha), family)


def alpha_modulation_norm_shell(f, p, q, s, alpha, family=None):
    return norm(f, SpaceParams("alpha_shell", p, q, s, alpha=alpha), family)


def besov_norm(f, p, q, s, family=None):
    return norm(f, SpaceParams("besov", p, q, s), family)


def tilde_besov_norm(f, p, q, s, family=None):
    return norm(f, SpaceParams("besov_tilde", p, q, s), family)


def lizorkin_besov_norm(f, p, q, s, family=None):
    return norm(f, SpaceParams("besov_lizorkin", p, q, s), family)


def two_index_besov_norm(f, p, q, s1, s2, tilde=False, family=None):
    kind = "besov_two_index_tilde" if tilde else "besov_two_index"
    return norm(f, SpaceParams(kind, p, q, s1, s2=s2), family)

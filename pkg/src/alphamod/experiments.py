"""
Trace-theorem sweeps, the sharpness counterexamples and the closed-form
exponents ``s_p`` and ``sigma_{alpha,p,q}``.

Random test functions are finite sums of modulated, translated copies of the
base bump ``F^{-1}[prod_i eta(2 xi_i)]``. Their spectra are defined
analytically, so the same seed gives the same continuous function on every
grid; this is what makes the refinement / window-doubling comparisons
meaningful.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .bapu import BumpSpec, eta
from .grid import Grid, Spectrum, inverse_transform
from .norms import SpaceParams, norm
from .trace import extend, trace

__all__ = [
    "ExponentInputs",
    "SweepResult",
    "sp_exponent",
    "sigma_exponent",
    "make_base_bump",
    "counterexample_harmonic",
    "counterexample_log",
    "random_atoms",
    "render_atoms",
    "random_family",
    "run_trace_sweep",
    "theorem1_sweep",
    "corollary1_sweep",
    "theorem2_sweep",
    "theorem5_sweep",
    "remark5_sigma_sweep",
    "sharpness_sweep",
    "stability_check",
    "refine",
    "widen",
    "harmonic_partial_sum",
    "log_partial_sum",
]

PROFILES = ("uniform", "single_slab", "lacunary")


def sp_exponent(p, n):
    """Critical exponent ``(n - 1)(1/min(p, 1) - 1)``."""
    if not p > 0:
        raise ValueError(f"p must be positive, got {p}")
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return (n - 1) * (1.0 / min(p, 1.0) - 1.0)


@dataclass(frozen=True)
class ExponentInputs:
    n: int
    p: float
    q: float
    s: float
    alpha: float
    epsilon: float = 1e-3

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise ValueError(f"n must be an integer >= 2, got {self.n}")
        if not (self.p > 0 and self.q > 0):
            raise ValueError("p and q must be positive")
        if not (0 <= self.alpha <= 1):
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")

    @property
    def sp(self):
        return sp_exponent(self.p, self.n)

    @property
    def critical_s(self):
        """``alpha (n-1)/q + alpha s_p``; the alpha trace sweep needs ``s`` at or above it."""
        return self.alpha * (self.n - 1) / self.q + self.alpha * self.sp

    @property
    def discriminant(self):
        return self.q * self.s + (self.n - 1) * (1 - self.alpha) - self.q * self.alpha * self.sp


def sigma_exponent(inputs, atol=1e-12):
    """Extra smoothness ``sigma_{alpha,p,q}`` for ``s`` below the critical value."""
    x = inputs
    if not x.s < x.critical_s:
        raise ValueError(f"s = {x.s} is not below alpha(n-1)/q + alpha s_p = {x.critical_s}")
    a, p, q = x.alpha, x.p, x.q
    d = x.discriminant
    if d > atol:
        return a / p + (1 - a) * (a * (x.n - 1) / q + a * x.sp - x.s)
    if d < -atol:
        return a / p + a * x.sp - x.s
    return a / p + a * x.sp - x.s + x.epsilon


# --- test functions ----------------------------------------------------------

def _bump_spectrum(grid, center, bump, dilation=2.0):
    xi = grid.xi_axis()
    factors = [eta(dilation * (xi - c), bump) for c in center]
    out = factors[0]
    for f in factors[1:]:
        out = np.multiply.outer(out, f)
    return np.asarray(out, dtype=complex)


def make_base_bump(grid, bump=BumpSpec()):
    """``F^{-1}[prod_i eta(2 xi_i)]``: real, even, spectrum inside ``[-1, 1]^n``."""
    spec = _bump_spectrum(grid, (0.0,) * grid.dim, bump)
    f = inverse_transform(Spectrum(grid, spec))
    return f


def _check_counterexample_window(N, grid):
    need = 2 ** N + 2
    if need > grid.window_half_side:
        raise ValueError(f"N = {N} needs frequencies up to {need}, "
                         f"but the window half-side is {grid.window_half_side:g}")


def _modulated_sum(N, grid, coeff, bump):
    _check_counterexample_window(N, grid)
    xi = grid.xi_axis()
    head = _bump_spectrum(grid, (0.0,) * (grid.dim - 1), bump) if grid.dim > 1 else np.ones(())
    last = np.zeros(grid.M, dtype=complex)
    for k in range(-2 ** N, 2 ** N + 1):
        c = coeff(k)
        if c:
            last += c * eta(2.0 * (xi - k), bump)
    spec = np.multiply.outer(head, last) if grid.dim > 1 else last
    return inverse_transform(Spectrum(grid, spec))


def counterexample_harmonic(N, grid, bump=BumpSpec()):
    """``sum_{|k_n| <= 2^N} <k_n>^{-1} e^{i k_n x_n} f(x)`` with ``f`` the base bump."""
    return _modulated_sum(N, grid, lambda k: 1.0 / math.sqrt(1 + k * k), bump)


def _log_coeff(k):
    if abs(k) < 2:
        return 0.0
    b = math.sqrt(1 + k * k)
    return 1.0 / (b * math.log(b))


def counterexample_log(N, grid, bump=BumpSpec()):
    """Like the harmonic variant with coefficients ``1/(<k_n> ln <k_n>)``, ``|k_n| >= 2``."""
    return _modulated_sum(N, grid, _log_coeff, bump)


def harmonic_partial_sum(N):
    return sum(1.0 / math.sqrt(1 + k * k) for k in range(-2 ** N, 2 ** N + 1))


def log_partial_sum(N):
    return sum(_log_coeff(k) for k in range(-2 ** N, 2 ** N + 1))


@dataclass(frozen=True)
class Atom:
    coeff: complex
    shift: tuple
    freq: tuple


def random_atoms(rng, dim, radius, profile="uniform", count=4, spread=2.0):
    """Draw ``count`` atoms with integer frequencies in ``[-radius, radius]^dim``."""
    if profile not in PROFILES:
        raise ValueError(f"profile must be one of {PROFILES}, got {profile!r}")
    R = int(radius)
    atoms = []
    slab = int(rng.integers(-R, R + 1))
    lac = [0] + [s * 2 ** m for m in range(int(math.log2(R)) + 1 if R >= 1 else 0)
                 for s in (-1, 1)]
    for _ in range(count):
        c = complex(rng.normal(), rng.normal())
        x = tuple(float(v) for v in rng.uniform(-spread, spread, size=dim))
        if profile == "uniform":
            w = rng.integers(-R, R + 1, size=dim)
        elif profile == "single_slab":
            w = rng.integers(-R, R + 1, size=dim)
            w[-1] = slab
        else:
            w = np.array([lac[i] for i in rng.integers(0, len(lac), size=dim)])
        atoms.append(Atom(c, x, tuple(int(v) for v in w)))
    return atoms


def render_atoms(atoms, grid, bump=BumpSpec()):
    """Sample ``sum_j c_j e^{i w_j (x - x_j)} f(x - x_j)`` on ``grid`` through its spectrum."""
    xi = grid.xi_axis()
    spec = np.zeros(grid.shape, dtype=complex)
    for a in atoms:
        factors = [np.exp(-1j * x * xi) * eta(2.0 * (xi - w), bump)
                   for x, w in zip(a.shift, a.freq)]
        term = factors[0]
        for f in factors[1:]:
            term = np.multiply.outer(term, f)
        spec += a.coeff * term
    return inverse_transform(Spectrum(grid, spec))


def random_family(trials, seed, dim, radius, extensions=True, count=4):
    """Seeded list of trial descriptions: ``("atoms", atoms)`` or ``("extend", atoms)``.

    Every fifth trial (when ``extensions``) is the extension of a random
    ``(dim-1)``-dimensional function.
    """
    rng = np.random.default_rng(seed)
    out = []
    for i in range(trials):
        if extensions and dim > 1 and i % 5 == 4:
            out.append(("extend", random_atoms(rng, dim - 1, radius, "uniform", count)))
        else:
            out.append(("atoms", random_atoms(rng, dim, radius, PROFILES[i % 3], count)))
    return out


def _render_trial(trial, grid, bump):
    what, atoms = trial
    if what == "extend":
        return extend(render_atoms(atoms, grid.reduced(), bump), bump)
    return render_atoms(atoms, grid, bump)


# --- sweeps ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SweepResult:
    """Rows of ``(index, source_norm, trace_norm, ratio)`` plus an optional fit."""

    rows: list
    fit: dict = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.rows:
            raise ValueError("a sweep needs at least one row")

    @property
    def ratios(self):
        return np.array([r[3] for r in self.rows])

    @property
    def max_ratio(self):
        return float(self.ratios.max())

    def as_dict(self):
        return {"rows": [list(r) for r in self.rows], "fit": self.fit,
                "max_ratio": self.max_ratio, "meta": self.meta}

    def csv(self):
        lines = ["index,source_norm,trace_norm,ratio"]
        lines += [f"{r[0]},{float(r[1])!r},{float(r[2])!r},{float(r[3])!r}" for r in self.rows]
        return "\n".join(lines) + "\n"

    def plotdata(self):
        return "".join(f"{r[0]} {float(r[3])!r}\n" for r in self.rows)


def _linear_fit(xs, ys):
    res = stats.linregress(xs, ys)
    return {"model": "linear", "slope": float(res.slope), "intercept": float(res.intercept),
            "correlation": float(res.rvalue)}


def run_trace_sweep(source, target, grid, trials=50, seed=0, radius=3,
                    extensions=True, bump=BumpSpec(), meta=None):
    """Trace ratios ``||Tr f||_target / ||f||_source`` over a seeded random family."""
    rows = []
    for i, trial in enumerate(random_family(trials, seed, grid.dim, radius, extensions)):
        f = _render_trial(trial, grid, bump)
        src = norm(f, source, bump=bump).total
        tgt = norm(trace(f), target, bump=bump).total
        rows.append((i, src, tgt, tgt / src))
    info = {"source": source.as_dict(), "target": target.as_dict(),
            "grid": {"n": grid.dim, "M": grid.M, "L": grid.L},
            "trials": trials, "seed": seed, "radius": radius}
    info.update(meta or {})
    return SweepResult(rows, None, info)


def _third(p, q):
    return min(p, q, 1.0)


def theorem1_spaces(p, q, s):
    source = SpaceParams("modulation_anisotropic", p, q, s, third_r=_third(p, q))
    target = SpaceParams("modulation", p, q, s)
    return source, target


def theorem1_sweep(p, q, s, grid, trials=50, seed=0, radius=3, bump=BumpSpec()):
    """Trace from the anisotropic space with third index ``min(p, q, 1)`` to ``M^s_{p,q}``."""
    source, target = theorem1_spaces(p, q, s)
    return run_trace_sweep(source, target, grid, trials, seed, radius, bump=bump,
                           meta={"theorem": "1"})


def corollary1_sweep(p, q, s, epsilon, grid, trials=50, seed=0, radius=3, bump=BumpSpec()):
    if s < 0 or not epsilon > 0:
        raise ValueError("corollary sweep needs s >= 0 and epsilon > 0")
    gain = 1.0 / _third(p, q) - (0.0 if math.isinf(q) else 1.0 / q) + epsilon
    source = SpaceParams("modulation", p, q, s + gain)
    target = SpaceParams("modulation", p, q, s)
    return run_trace_sweep(source, target, grid, trials, seed, radius, bump=bump,
                           meta={"theorem": "cor1", "epsilon": epsilon})


def theorem2_spaces(p, q, s, alpha):
    source = SpaceParams("alpha_grid", p, _third(p, q), s + alpha / p, alpha=alpha)
    target = SpaceParams("alpha_grid", p, q, s, alpha=alpha)
    return source, target


def theorem2_sweep(p, q, s, alpha, grid, trials=50, seed=0, radius=3, bump=BumpSpec()):
    """Alpha-modulation trace: ``M^{s + alpha/p, alpha}_{p, min(p,q,1)} -> M^{s, alpha}_{p,q}``."""
    crit = ExponentInputs(grid.dim, p, q, s, alpha).critical_s
    if s < crit - 1e-12:
        raise ValueError(f"s = {s} is below alpha(n-1)/q + alpha s_p = {crit}")
    source, target = theorem2_spaces(p, q, s, alpha)
    return run_trace_sweep(source, target, grid, trials, seed, radius, bump=bump,
                           meta={"theorem": "2", "alpha": alpha})


def remark5_sigma_sweep(inputs, grid, trials=50, seed=0, radius=3, bump=BumpSpec()):
    sigma = sigma_exponent(inputs)
    x = inputs
    source = SpaceParams("alpha_grid", x.p, _third(x.p, x.q), x.s + sigma, alpha=x.alpha)
    target = SpaceParams("alpha_grid", x.p, x.q, x.s, alpha=x.alpha)
    return run_trace_sweep(source, target, grid, trials, seed, radius, bump=bump,
                           meta={"theorem": "rem5", "sigma": sigma, "alpha": x.alpha})


THEOREM5_BRANCHES = ("tilde_sp", "plain", "two_index_tilde", "two_index")


def theorem5_spaces(p, q, s, n, branch):
    sp = sp_exponent(p, n)
    third = _third(p, q)
    if branch == "tilde_sp":
        if abs(s - sp) > 1e-12:
            raise ValueError(f"branch tilde_sp needs s = s_p = {sp}")
        return (SpaceParams("besov_tilde", p, third, sp + 1.0 / p),
                SpaceParams("besov", p, q, sp))
    if branch == "plain":
        if not s < sp:
            raise ValueError(f"branch plain needs s < s_p = {sp}")
        return (SpaceParams("besov", p, third, sp + 1.0 / p), SpaceParams("besov", p, q, s))
    if not (1 < p < math.inf):
        raise ValueError(f"branch {branch} needs 1 < p < inf")
    qq = min(q, 1.0)
    if branch == "two_index_tilde":
        return (SpaceParams("besov_two_index_tilde", p, qq, 1.0 / p, s2=1.0 / p),
                SpaceParams("besov", p, q, 0.0))
    if branch == "two_index":
        if not s < 0:
            raise ValueError("branch two_index needs s < 0")
        return (SpaceParams("besov_two_index", p, qq, 1.0 / p, s2=s + 1.0 / p),
                SpaceParams("besov", p, q, s))
    raise ValueError(f"branch must be one of {THEOREM5_BRANCHES}, got {branch!r}")


def theorem5_sweep(p, q, s, grid, branch="tilde_sp", trials=50, seed=0, radius=3,
                   bump=BumpSpec()):
    """Besov trace sweeps for ``s <= s_p``, one of the four source/target pairings."""
    source, target = theorem5_spaces(p, q, s, grid.dim, branch)
    return run_trace_sweep(source, target, grid, trials, seed, radius, bump=bump,
                           meta={"theorem": "5", "branch": branch})


def sharpness_sweep(variant, grid, Ns=range(2, 7), p=2, q=2, third_r=2, bump=BumpSpec()):
    """Counterexample families against ``N``; ``variant`` is ``harmonic`` or ``log``.

    harmonic: source ``M^0_{p,q,third_r}``; log: source ``M^{1/q'}_{p,q}``. The
    target is ``M^0_{p,q}`` on the hyperplane in both cases.
    """
    target = SpaceParams("modulation", p, q, 0.0)
    if variant == "harmonic":
        make = counterexample_harmonic
        source = SpaceParams("modulation_anisotropic", p, q, 0.0, third_r=third_r)
    elif variant == "log":
        make = counterexample_log
        source = SpaceParams("modulation", p, q, 1.0 - 1.0 / q)
    else:
        raise ValueError(f"variant must be 'harmonic' or 'log', got {variant!r}")
    rows = []
    for N in Ns:
        F = make(N, grid, bump)
        src = norm(F, source, bump=bump).total
        tgt = norm(trace(F), target, bump=bump).total
        rows.append((int(N), src, tgt, tgt / src))
    Ns = [r[0] for r in rows]
    fit = _linear_fit(Ns, [r[3] for r in rows]) if len(rows) > 2 else None
    meta = {"variant": variant, "source": source.as_dict(), "target": target.as_dict(),
            "grid": {"n": grid.dim, "M": grid.M, "L": grid.L}}
    return SweepResult(rows, fit, meta)


# --- stability proxy ---------------------------------------------------------

def refine(grid):
    """Finer frequency mesh, same frequency window: ``(2M, 2L)``."""
    return Grid(grid.dim, 2 * grid.M, 2 * grid.L)


def widen(grid):
    """Doubled frequency window, same box: ``(2M, L)``."""
    return Grid(grid.dim, 2 * grid.M, grid.L)


def stability_check(sweep, grid):
    """Run ``sweep(grid)`` on the base, refined and widened grids.

    Returns the three max ratios and the relative changes against the base.
    """
    base = sweep(grid).max_ratio
    fine = sweep(refine(grid)).max_ratio
    wide = sweep(widen(grid)).max_ratio
    return {
        "base": base,
        "refined": fine,
        "widened": wide,
        "refine_change": abs(fine - base) / base,
        "widen_change": abs(wide - base) / base,
    }

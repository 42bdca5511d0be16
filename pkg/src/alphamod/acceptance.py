"""
The twelve acceptance criteria as plain functions.

Each ``criterion_N()`` runs at the stated tolerance and returns a
``CriterionResult``; ``run_all`` runs them in order. Both the pytest
acceptance module and ``alphamod verify-all`` call into this file so the two
can never drift apart.
"""

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .bapu import (
    BumpSpec,
    build_dyadic_family,
    build_grid_bapu,
    build_shell_bapu,
    partition_deviation,
)
from .covering import (
    coverage_gap,
    dyadic_covering,
    grid_alpha_covering,
    lizorkin_T,
    lizorkin_boxes,
    lizorkin_covering,
    max_overlap,
    r_threshold,
    shell_alpha_covering,
)
from .decompose import decompose_all, peetre_maximal
from .experiments import (
    ExponentInputs,
    _render_trial,
    random_atoms,
    random_family,
    refine,
    render_atoms,
    sharpness_sweep,
    sigma_exponent,
    sp_exponent,
    stability_check,
    theorem1_sweep,
    theorem2_sweep,
    theorem5_sweep,
)
from .grid import Grid, SampledFunction, forward_transform, inverse_transform, lp_norm
from .norms import SpaceParams, get_family, norm
from .trace import extend, retraction_check

__all__ = ["CriterionResult", "CRITERIA", "PROFILES", "run_all", "run_one", "format_line"]

PROFILES = ("desk",)
TWO_PI = 2 * math.pi

# shared desk-scale settings
PARTITION_GRID = Grid(2, 128, 8 * math.pi)      # window half-side 16
SWEEP_GRID = Grid(2, 256, 32 * math.pi)         # window half-side 8
SHARP_GRID = Grid(2, 1024, 8 * math.pi)         # window half-side 128
MAXIMAL_GRID = Grid(2, 64, 8 * math.pi)
EQUIV_GRID = Grid(2, 256, 16 * math.pi)         # window half-side 16
SWEEP_TRIALS = 50
SWEEP_SEED = 1
SWEEP_RADIUS = 2


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def as_dict(self):
        return {"number": self.number, "name": self.name, "passed": bool(self.passed),
                "detail": self.detail, "seconds": self.seconds}


def format_line(res):
    status = "PASS" if res.passed else "FAIL"
    return f"[{status}] criterion {res.number:2d} {res.name} ({res.seconds:.1f} s)"


def _random_functions(grid, count, seed, radius=3):
    rng = np.random.default_rng(seed)
    return [render_atoms(random_atoms(rng, grid.dim, radius, "uniform", 4), grid)
            for _ in range(count)]


# --- 1 -----------------------------------------------------------------------

def criterion_1():
    g = PARTITION_GRID
    builders = {
        "grid alpha=0": lambda: build_grid_bapu(0.0, 0.5, g),
        "grid alpha=0.5": lambda: build_grid_bapu(0.5, 1.0, g),
        "shell alpha=0.5": lambda: build_shell_bapu(0.5, r_threshold(0.5, "shell"), g),
        "dyadic": lambda: build_dyadic_family(g),
    }
    detail, ok = {}, True
    for name, make in builders.items():
        t = time.perf_counter()
        dev = partition_deviation(make())
        dt = time.perf_counter() - t
        good = dev <= 1e-10 and dt <= 10.0
        ok &= good
        detail[name] = {"deviation": dev, "seconds": dt, "passed": good}
    return ok, detail


# --- 2 -----------------------------------------------------------------------

def criterion_2():
    g = PARTITION_GRID
    W = g.window_half_side
    coverings = {
        "grid alpha=0": grid_alpha_covering(0.0, 0.5, W, 2),
        "grid alpha=0.5": grid_alpha_covering(0.5, 1.0, W, 2),
        "shell alpha=0.5": shell_alpha_covering(0.5, r_threshold(0.5, "shell"), W, 2),
        "lizorkin": lizorkin_covering(W, 2),
        "dyadic": dyadic_covering(W, 2),
    }
    detail, ok = {}, True
    for name, cov in coverings.items():
        gap = coverage_gap(cov, grid=g)
        ov = max_overlap(cov, grid=g)
        good = gap == 0 and ov <= cov.n0
        ok &= good
        detail[name] = {"coverage_gap": gap, "max_overlap": ov, "n0": cov.n0, "passed": good}
    boxes_ok, defect = True, 0.0
    for k in range(1, int(math.log2(W)) + 1):
        boxes = lizorkin_boxes(k, 2)
        boxes_ok &= len(boxes) == 12 == lizorkin_T(2)
        area = sum(float(np.prod(hi - lo)) for _, lo, hi in boxes)
        exact = (2.0 ** (k + 1)) ** 2 - (2.0 ** k) ** 2
        defect = max(defect, abs(area - exact))
    detail["lizorkin boxes per shell"] = 12 if boxes_ok else "mismatch"
    detail["lizorkin area defect"] = defect
    ok &= boxes_ok and defect <= 1e-12
    return ok, detail


# --- 3 -----------------------------------------------------------------------

def criterion_3():
    g = Grid(2, 128, 8 * math.pi)
    rng = np.random.default_rng(11)
    vals = rng.normal(size=g.shape) + 1j * rng.normal(size=g.shape)
    f = SampledFunction(g, vals)
    roundtrip = float(np.max(np.abs(inverse_transform(forward_transform(f)).values - vals)))
    F = forward_transform(f)
    l2 = lp_norm(f, 2)
    spec = math.sqrt(np.sum(np.abs(F.coefficients) ** 2) * g.freq_spacing ** 2) / TWO_PI
    plancherel = abs(l2 - spec) / l2
    fam = get_family("grid", g, 0.0, 0.5)
    recon = 0.0
    for h in _random_functions(g, 20, seed=12):
        blocks = decompose_all(h, fam).total()
        recon = max(recon, float(np.max(np.abs(blocks.values - h.values))))
    ok = roundtrip <= 1e-12 and plancherel <= 1e-10 and recon <= 1e-10
    return ok, {"roundtrip": roundtrip, "plancherel_rel": plancherel,
                "reconstruction": recon}


# --- 4 -----------------------------------------------------------------------

def criterion_4():
    g = Grid(2, 128, 8 * math.pi)
    n0 = grid_alpha_covering(0.0, 0.5, g.window_half_side, 2).n0
    params = SpaceParams("modulation", 2, 2, 0)
    lo_worst, hi_worst = math.inf, 0.0
    for f in _random_functions(g, 20, seed=13):
        r = norm(f, params).total / lp_norm(f, 2)
        lo_worst, hi_worst = min(lo_worst, r), max(hi_worst, r)
    ok = lo_worst >= n0 ** -0.5 and hi_worst <= 1 + 1e-8
    return ok, {"n0": n0, "min_ratio": lo_worst, "max_ratio": hi_worst,
                "lower_bound": n0 ** -0.5}


# --- 5 -----------------------------------------------------------------------

def _ratio_family(grid, a, b, trials=50, seed=3, radius=3):
    out = []
    for trial in random_family(trials, seed, grid.dim, radius):
        f = _render_trial(trial, grid, BumpSpec())
        out.append(norm(f, a).total / norm(f, b).total)
    return np.array(out)


def criterion_5():
    pairs = {
        "alpha grid/shell s=0": (SpaceParams("alpha_grid", 2, 2, 0, alpha=0.5),
                                 SpaceParams("alpha_shell", 2, 2, 0, alpha=0.5)),
        "alpha grid/shell s=1": (SpaceParams("alpha_grid", 2, 2, 1, alpha=0.5),
                                 SpaceParams("alpha_shell", 2, 2, 1, alpha=0.5)),
        "dyadic/lizorkin": (SpaceParams("besov", 2, 2, 0),
                            SpaceParams("besov_lizorkin", 2, 2, 0)),
    }
    detail, ok = {}, True
    for name, (a, b) in pairs.items():
        base = _ratio_family(EQUIV_GRID, a, b)
        fine = _ratio_family(refine(EQUIV_GRID), a, b)
        spread = float(base.max() / base.min())
        change = abs(fine.max() - base.max()) / base.max()
        good = spread <= 10 and change <= 0.2
        ok &= good
        detail[name] = {"max_over_min": spread, "max_ratio": float(base.max()),
                        "refined_max_ratio": float(fine.max()), "change": float(change),
                        "passed": good}
    return ok, detail


# --- 6 -----------------------------------------------------------------------

def criterion_6():
    g2 = Grid(2, 128, 8 * math.pi)
    g1 = g2.reduced()
    fam = get_family("grid", g2, 0.0, 0.5)
    worst, leak = 0.0, 0.0
    for g in _random_functions(g1, 20, seed=14):
        worst = max(worst, retraction_check(g))
        F = forward_transform(extend(g))
        scale = np.max(np.abs(F.coefficients))
        for lab, w in fam.windows.items():
            if abs(lab.k[-1]) >= 3 and not w.empty:
                leak = max(leak, float(np.max(np.abs(F.coefficients[w.ix()] * w.values))) / scale)
    ok = worst <= 1e-10 and leak <= 1e-12
    return ok, {"retraction": worst, "block_leak": leak}


# --- 7 -----------------------------------------------------------------------

THEOREM1_SETS = ((2, 2, 0), (1, 1, 0), (2, 1, 1), (0.5, 0.5, 0))


def _stability(sweep, limit_seconds=120.0):
    t = time.perf_counter()
    res = stability_check(sweep, SWEEP_GRID)
    dt = time.perf_counter() - t
    res["seconds"] = dt
    res["passed"] = (res["refine_change"] <= 0.2 and res["widen_change"] <= 0.2
                     and math.isfinite(res["base"]) and dt <= limit_seconds)
    return res


def criterion_7():
    detail, ok = {}, True
    for p, q, s in THEOREM1_SETS:
        res = _stability(lambda G, p=p, q=q, s=s: theorem1_sweep(
            p, q, s, G, SWEEP_TRIALS, SWEEP_SEED, SWEEP_RADIUS))
        ok &= res["passed"]
        detail[f"(p,q,s)=({p},{q},{s})"] = res
    return ok, detail


# --- 8, 9 --------------------------------------------------------------------

SHARP_NS = range(2, 7)


def criterion_8():
    strong = sharpness_sweep("harmonic", SHARP_GRID, SHARP_NS, third_r=2)
    weak = sharpness_sweep("harmonic", SHARP_GRID, SHARP_NS, third_r=1)
    r = strong.ratios
    growth = float(r[-1] / r[0])
    variation = float(weak.ratios.max() / weak.ratios.min() - 1)
    corr = strong.fit["correlation"]
    ok = corr >= 0.95 and growth >= 2 and variation <= 0.5
    return ok, {"correlation": corr, "ratio6_over_ratio2": growth,
                "conforming_variation": variation,
                "ratios_r2": r.tolist(), "ratios_r1": weak.ratios.tolist()}


def _one_sided_log_sum(N):
    return sum(1.0 / (k * math.log(k)) for k in range(2, 2 ** N + 1))


def criterion_9():
    res = sharpness_sweep("log", SHARP_GRID, SHARP_NS)
    src = np.array([row[1] for row in res.rows])
    tgt = np.array([row[2] for row in res.rows])
    Ns = [row[0] for row in res.rows]
    variation = float(src.max() / src.min() - 1)
    increasing = bool(np.all(np.diff(tgt) > 0))
    ref = np.array([_one_sided_log_sum(N) for N in Ns])
    mismatch = float(np.max(np.abs((tgt / tgt[0]) / (ref / ref[0]) - 1)))
    ok = variation <= 0.25 and increasing and mismatch <= 0.2
    return ok, {"source_variation": variation, "trace_increasing": increasing,
                "partial_sum_mismatch": mismatch, "trace_norms": tgt.tolist()}


# --- 10 ----------------------------------------------------------------------

def criterion_10():
    g = MAXIMAL_GRID
    fam = get_family("grid", g, 0.0, 0.5)
    rng = np.random.default_rng(5)
    f = render_atoms(random_atoms(rng, 2, 3, "uniform", count=6), g)
    blocks = decompose_all(f, fam).blocks
    detail, ok = {}, True
    dominated = True
    for p in (1, 2):
        norms = {lab: lp_norm(b, p) for lab, b in blocks.items()}
        top = max(norms.values())
        consts = []
        for lab, b in blocks.items():
            if norms[lab] < 1e-8 * top:
                continue
            m = peetre_maximal(b, 1.0, p / 2)
            dominated &= bool(np.all(m.values >= np.abs(b.values)))
            consts.append(lp_norm(m, p) / norms[lab])
        spread = max(consts) / min(consts)
        ok &= spread <= 10
        detail[f"p={p}"] = {"labels": len(consts), "C_max": max(consts),
                            "C_min": min(consts), "max_over_min": spread}
    detail["pointwise_domination"] = dominated
    return ok and dominated, detail


# --- 11 ----------------------------------------------------------------------

def criterion_11():
    eps = 1e-3
    checks = {
        "s_p(2, n=2) = 0": sp_exponent(2, 2) == 0,
        "s_p(2, n=3) = 0": sp_exponent(2, 3) == 0,
        "s_p(1/2, n=2) = 1": sp_exponent(0.5, 2) == 1,
        "s_p(1, n=2) = 0": sp_exponent(1, 2) == 0,
        "sigma negative branch = 1.25": sigma_exponent(ExponentInputs(2, 2, 2, -1, 0.5)) == 1.25,
        "sigma zero branch = 0.5 + eps":
            sigma_exponent(ExponentInputs(2, 2, 2, -0.25, 0.5, eps)) == 0.5 + eps,
        "sigma alpha=0 negative branch = -s": sigma_exponent(ExponentInputs(2, 2, 2, -1, 0.0)) == 1,
    }
    return all(checks.values()), checks


# --- 12 ----------------------------------------------------------------------

def criterion_12():
    detail, ok = {}, True
    alpha = 0.5
    s2 = alpha * (2 - 1) / 2
    jobs = {
        f"alpha trace (alpha=0.5, p=q=2, s={s2})":
            lambda G: theorem2_sweep(2, 2, s2, alpha, G, SWEEP_TRIALS, SWEEP_SEED, SWEEP_RADIUS),
        "Besov trace (2,2,0) tilde_sp":
            lambda G: theorem5_sweep(2, 2, 0, G, "tilde_sp", SWEEP_TRIALS, SWEEP_SEED,
                                     SWEEP_RADIUS),
        "Besov trace (2,2,0) two_index_tilde":
            lambda G: theorem5_sweep(2, 2, 0, G, "two_index_tilde", SWEEP_TRIALS, SWEEP_SEED,
                                     SWEEP_RADIUS),
        "Besov trace (1/2,2,s_p) tilde_sp":
            lambda G: theorem5_sweep(0.5, 2, sp_exponent(0.5, 2), G, "tilde_sp", SWEEP_TRIALS,
                                     SWEEP_SEED, SWEEP_RADIUS),
    }
    for name, sweep in jobs.items():
        res = _stability(sweep)
        ok &= res["passed"]
        detail[name] = res
    g = Grid(2, 128, 16 * math.pi)
    a = theorem1_sweep(1, 1, 0, g, SWEEP_TRIALS, SWEEP_SEED, SWEEP_RADIUS)
    b = theorem2_sweep(1, 1, 0, 0.0, g, SWEEP_TRIALS, SWEEP_SEED, SWEEP_RADIUS)
    worst = max(abs(x[3] - y[3]) / abs(x[3]) for x, y in zip(a.rows, b.rows))
    same = len(a.rows) == len(b.rows) and worst <= 1e-12
    detail["alpha=0 rows vs anisotropic sweep (1,1,0)"] = {"max_rel_diff": worst, "passed": same}
    return ok and same, detail


CRITERIA = {
    1: ("partition of unity", criterion_1),
    2: ("covering admissibility", criterion_2),
    3: ("transform fidelity", criterion_3),
    4: ("L2 sandwich", criterion_4),
    5: ("norm equivalences", criterion_5),
    6: ("retraction identity", criterion_6),
    7: ("anisotropic trace boundedness proxy", criterion_7),
    8: ("sharpness, harmonic variant", criterion_8),
    9: ("sharpness, log variant", criterion_9),
    10: ("maximal function", criterion_10),
    11: ("exponent calculators", criterion_11),
    12: ("alpha and Besov trace sweeps", criterion_12),
}


def run_one(number):
    name, fn = CRITERIA[number]
    t = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as exc:  # a crash is a failure, reported like one
        passed, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
    return CriterionResult(number, name, bool(passed), detail, time.perf_counter() - t)


def run_all(profile="desk", numbers=None, echo=None):
    """Run the criteria in order; ``echo`` (e.g. ``print``) gets one line each."""
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; expected one of {PROFILES}")
    out = []
    for n in (numbers or sorted(CRITERIA)):
        res = run_one(n)
        if echo is not None:
            echo(format_line(res))
        out.append(res)
    return out

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from alphamod.bapu import eta
from alphamod.covering import japanese_bracket
from alphamod.grid import Grid, SampledFunction, Spectrum, inverse_transform, lp_norm, forward_transform
from alphamod.norms import (
    KINDS,
    SpaceParams,
    alpha_modulation_norm_grid,
    alpha_modulation_norm_shell,
    anisotropic_modulation_norm,
    besov_norm,
    get_family,
    lizorkin_besov_norm,
    lq_aggregate,
    modulation_norm,
    norm,
    tilde_besov_norm,
    two_index_besov_norm,
)

from conftest import band_limited

G = Grid(2, 64, 8 * math.pi)       # window 8
GL = Grid(2, 64, 4 * math.pi)      # window 16 (power of two for Lizorkin)

ALL_PARAMS = [
    SpaceParams("modulation", 1.0, 2.0, 0.5),
    SpaceParams("modulation_anisotropic", 2.0, 1.0, 1.0, third_r=0.5),
    SpaceParams("alpha_grid", 2.0, 2.0, 1.0, alpha=0.5),
    SpaceParams("alpha_shell", 0.5, 1.0, 0.0, alpha=0.5),
    SpaceParams("besov", 1.0, 1.0, 0.5),
    SpaceParams("besov_tilde", 2.0, 2.0, 0.0),
    SpaceParams("besov_lizorkin", 2.0, 2.0, 1.0),
    SpaceParams("besov_two_index", 2.0, 1.0, 0.5, s2=-0.5),
    SpaceParams("besov_two_index_tilde", 1.5, 2.0, 0.5, s2=0.5),
]


def pure_mode(grid, k):
    x = grid.x_mesh()
    return SampledFunction(grid, np.exp(1j * sum(ki * xi for ki, xi in zip(k, x))))


def annulus_function(grid, radius, width):
    """Radial spectrum ``eta((|xi| - radius)/width)`` (support ``||xi| - radius| < 2 width``)."""
    xi = np.linalg.norm(np.stack(grid.xi_mesh(), -1), axis=-1)
    return inverse_transform(Spectrum(grid, eta((xi - radius) / width).astype(complex)))


class TestSpaceParams:
    def test_required_and_forbidden_fields(self):
        with pytest.raises(ValueError, match="requires third_r"):
            SpaceParams("modulation_anisotropic", 2, 2)
        with pytest.raises(ValueError, match="does not take alpha"):
            SpaceParams("modulation", 2, 2, alpha=0.5)
        with pytest.raises(ValueError, match="requires s2"):
            SpaceParams("besov_two_index", 2, 2)

    def test_ranges(self):
        with pytest.raises(ValueError):
            SpaceParams("modulation", 0, 2)
        with pytest.raises(ValueError):
            SpaceParams("modulation", 2, -1)
        with pytest.raises(ValueError):
            SpaceParams("alpha_grid", 2, 2, alpha=1.0)
        with pytest.raises(ValueError):
            SpaceParams("alpha_shell", 2, 2, alpha=0.0)
        with pytest.raises(ValueError):
            SpaceParams("nonsense", 2, 2)

    @pytest.mark.parametrize("p", [1.0, 0.5, math.inf])
    def test_lizorkin_kinds_need_p_between_one_and_infinity(self, p):
        for kind in ("besov_lizorkin",):
            with pytest.raises(ValueError, match="1 < p < inf"):
                SpaceParams(kind, p, 2)
        with pytest.raises(ValueError):
            SpaceParams("besov_two_index_tilde", p, 2, s2=0.0)

    def test_as_dict_round_trip(self):
        sp = SpaceParams("alpha_grid", 2, 1, 0.5, alpha=0.25)
        assert SpaceParams(**sp.as_dict()) == sp


class TestAggregate:
    def test_basic(self):
        assert lq_aggregate([3, 4], 2) == pytest.approx(5)
        assert lq_aggregate([3, 4], math.inf) == 4
        assert lq_aggregate([], 2) == 0.0

    def test_tiny_q_does_not_overflow(self):
        v = lq_aggregate([1e5, 2e5], 0.01)
        assert math.isfinite(v) and v > 2e5

    @settings(max_examples=50)
    @given(st.lists(st.floats(1e-3, 1e3), min_size=1, max_size=20),
           st.floats(0.2, 4.0), st.floats(0.2, 4.0))
    def test_nesting(self, amps, q1, q2):
        lo, hi = sorted((q1, q2))
        assert lq_aggregate(amps, hi) <= lq_aggregate(amps, lo) * (1 + 1e-12)


class TestModulation:
    @pytest.mark.parametrize("p", [0.5, 1.0, 2.0, math.inf])
    def test_single_block(self, p):
        f = pure_mode(G, (2, -1))
        rep = modulation_norm(f, p, 1.5, 0.0)
        assert len(rep.per_label) == 1
        assert rep.total == pytest.approx(lp_norm(f, p), rel=1e-10)

    @pytest.mark.parametrize("seed", range(4))
    def test_l2_sandwich_against_direct_sum(self, seed):
        f = band_limited(G, seed)
        fam = get_family("grid", G, 0.0, 0.5)
        sq = np.zeros(G.shape)
        for lab in fam.labels:
            sq += fam.dense(lab) ** 2
        F = forward_transform(f).coefficients
        direct = math.sqrt(np.sum(np.abs(F) ** 2 * sq) / G.L ** 2)
        total = modulation_norm(f, 2, 2, 0).total
        assert total == pytest.approx(direct, rel=1e-10)
        l2 = lp_norm(f, 2)
        assert 0.5 * l2 <= total <= (1 + 1e-8) * l2

    def test_weight_uses_full_bracket(self):
        f = pure_mode(G, (3, 4))
        assert modulation_norm(f, 2, 2, 1.0).total == pytest.approx(
            math.sqrt(26) * lp_norm(f, 2), rel=1e-10)


class TestAnisotropic:
    def test_third_equal_q_uses_bar_weight(self):
        f = band_limited(G, 5)
        rep = anisotropic_modulation_norm(f, 2, 1.5, 1.5, 1.0)
        manual = lq_aggregate([japanese_bracket(lab.k[:-1]) * b
                               for lab, (_, b) in rep.per_label.items()], 1.5)
        assert rep.total == pytest.approx(manual, rel=1e-12)

    def test_single_slab(self):
        x = G.x_mesh()
        f = band_limited(Grid(1, 64, 8 * math.pi), 1)
        vals = f.values[:, None] * np.exp(2j * x[1])
        g = SampledFunction(G, vals)
        rep = anisotropic_modulation_norm(g, 2, 2, 0.5)
        assert {lab.k[-1] for lab in rep.per_label} == {2}
        inner = lq_aggregate([b for _, b in rep.per_label.values()], 2)
        assert rep.total == pytest.approx(inner, rel=1e-12)

    def test_rejects_dim_one(self):
        with pytest.raises(ValueError):
            anisotropic_modulation_norm(band_limited(Grid(1, 32, 8 * math.pi), 0), 2, 2, 1)


class TestAlphaNorms:
    def test_alpha_zero_is_modulation(self):
        f = band_limited(G, 2)
        a = alpha_modulation_norm_grid(f, 1.0, 2.0, 0.5, 0.0).total
        b = modulation_norm(f, 1.0, 2.0, 0.5).total
        assert a == b

    def test_pure_mode_against_window_values(self):
        # one frequency node: the blocks are psi_k(xi0) f, so the total is ||f||_p ||psi(xi0)||_q
        f = pure_mode(G, (1, 2))
        fam = get_family("grid", G, 0.5, 1.0)
        i, j = G.xi_index(1.0), G.xi_index(2.0)
        vals = [fam.dense(lab)[i, j] for lab in fam.labels]
        expect = lp_norm(f, 1.0) * lq_aggregate(vals, 1.5)
        assert alpha_modulation_norm_grid(f, 1.0, 1.5, 0, 0.5).total == pytest.approx(expect, rel=1e-10)

    def test_grid_shell_equivalence(self):
        g = Grid(2, 128, 8 * math.pi)
        r = [alpha_modulation_norm_grid(f, 2, 2, 1, 0.5).total
             / alpha_modulation_norm_shell(f, 2, 2, 1, 0.5).total
             for f in (band_limited(g, s) for s in range(8))]
        assert max(r) / min(r) <= 10


class TestBesov:
    def test_single_annulus_two_blocks(self):
        g = Grid(2, 128, 8 * math.pi)
        f = annulus_function(g, 3.0, 0.15)   # |xi| in (2.7, 3.3): only phi_1 and phi_2
        rep = besov_norm(f, 2, 2, 0)
        assert sorted(lab.k for lab in rep.per_label) == [1, 2]
        blocks = [b for _, b in rep.per_label.values()]
        for q in (1, 2, math.inf):
            tot = besov_norm(f, 2, q, 0).total
            assert tot <= 2 ** (0 if math.isinf(q) else 1 / q) * max(blocks) * (1 + 1e-12)
        assert rep.total <= lp_norm(f, 2) * (1 + 1e-10)

    @pytest.mark.parametrize("s", [0.5, 1.0, -1.0])
    def test_two_scale(self, s):
        g = Grid(2, 256, 16 * math.pi)
        f, h = annulus_function(g, 3.0, 0.3), annulus_function(g, 6.0, 0.6)
        rf = besov_norm(f, 2, 2, s).total / besov_norm(f, 2, 2, 0).total
        rh = besov_norm(h, 2, 2, s).total / besov_norm(h, 2, 2, 0).total
        assert rh / rf == pytest.approx(2 ** s, rel=0.15)

    def test_tilde_dominates_without_low_block(self):
        g = Grid(2, 128, 8 * math.pi)
        f = annulus_function(g, 6.0, 0.3)
        assert tilde_besov_norm(f, 2, 2, 0.5).total >= besov_norm(f, 2, 2, 0.5).total

    def test_tilde_drops_k_zero(self):
        f = pure_mode(G, (0, 0))
        assert tilde_besov_norm(f, 2, 2, 0).total == 0.0


class TestLizorkin:
    def test_equivalence_with_dyadic(self):
        r = [lizorkin_besov_norm(f, 2, 2, 0).total / besov_norm(f, 2, 2, 0).total
             for f in (band_limited(GL, s) for s in range(10))]
        assert max(r) / min(r) <= 10

    def test_single_box(self):
        f = pure_mode(GL, (3, 1))
        rep = lizorkin_besov_norm(f, 2, 2, 0)
        assert len(rep.per_label) == 1

    def test_large_q_limit(self):
        f = band_limited(GL, 3)
        a = lizorkin_besov_norm(f, 2, 64, 0.5).total
        b = lizorkin_besov_norm(f, 2, math.inf, 0.5).total
        assert a / b == pytest.approx(1.0, abs=0.05)

    def test_two_index_equal_exponents(self):
        f = band_limited(GL, 4)
        assert two_index_besov_norm(f, 2, 2, 0.5, 0.5).total == \
            lizorkin_besov_norm(f, 2, 2, 0.5).total

    def test_off_axis_independent_of_s1(self):
        f = pure_mode(GL, (5, 1))        # |xi_1| > 4 >= |xi_2|: off-axis box of shell 3
        a = two_index_besov_norm(f, 2, 2, 0.0, 0.7).total
        b = two_index_besov_norm(f, 2, 2, 3.0, 0.7).total
        assert a == b
        assert two_index_besov_norm(f, 2, 2, 0.0, 0.7, tilde=True).total == a

    def test_tilde_changes_only_axis_terms(self):
        f = band_limited(GL, 6)
        a = two_index_besov_norm(f, 2, 2, 0.5, 0.2)
        b = two_index_besov_norm(f, 2, 2, 0.5, 0.2, tilde=True)
        for lab in a.per_label:
            same = a.per_label[lab] == b.per_label[lab]
            # the extra factor k^{1/q} is 1 only at k = 1
            assert same == (lab.t > 4 or lab.k == 1)


@pytest.mark.parametrize("params", ALL_PARAMS, ids=lambda p: p.kind)
def test_homogeneity_and_recompute(params):
    f = band_limited(GL, 8)
    rep = norm(f, params)
    assert rep.recompute() == pytest.approx(rep.total, rel=1e-12)
    scaled = norm(f * (-2.5j), params).total
    assert scaled == pytest.approx(2.5 * rep.total, rel=1e-10)


@pytest.mark.parametrize("params", ALL_PARAMS, ids=lambda p: p.kind)
def test_monotone_in_s(params):
    f = band_limited(GL, 9)
    lo = norm(f, params).total
    kw = {"s": params.s + 0.5}
    if params.s2 is not None:
        kw["s2"] = params.s2 + 0.5
    assert norm(f, params.with_(**kw)).total >= lo * (1 - 1e-12)


@pytest.mark.parametrize("params", ALL_PARAMS, ids=lambda p: p.kind)
def test_q_infinity_is_max(params):
    if params.kind == "modulation_anisotropic":
        params = params.with_(third_r=math.inf)
    f = band_limited(GL, 10)
    rep = norm(f, params.with_(q=math.inf))
    assert rep.total == max(w * b for w, b in rep.per_label.values())


def test_kinds_cover_all_params():
    assert {p.kind for p in ALL_PARAMS} == set(KINDS)

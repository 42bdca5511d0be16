import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from alphamod.bapu import (
    BumpSpec,
    build_dyadic_family,
    build_grid_bapu,
    build_lizorkin_masks,
    build_reduced_bapu,
    build_shell_bapu,
    eta,
    partition_deviation,
    pbapu_constant,
    support_violations,
)
from alphamod.covering import GridIndex
from alphamod.grid import Grid

G = Grid(2, 128, 8 * math.pi)


@pytest.fixture(scope="module")
def families():
    return {
        "grid0": build_grid_bapu(0.0, 0.5, G),
        "grid5": build_grid_bapu(0.5, 1.0, G),
        "shell": build_shell_bapu(0.5, 1.0, G),
        "dyadic": build_dyadic_family(G),
    }


class TestEta:
    @pytest.mark.parametrize("spec", [BumpSpec(), BumpSpec("raised_cosine")])
    def test_plateau_and_support(self, spec):
        assert eta(0.5, spec) == 1.0
        assert eta(1.0, spec) == 1.0
        assert eta(3.0, spec) == 0.0
        assert eta(2.0, spec) == 0.0
        assert 0 < eta(1.5, spec) < 1
        assert eta(1.2, spec) >= eta(1.8, spec)

    @settings(max_examples=60)
    @given(a=st.floats(-3, 3), b=st.floats(-3, 3))
    def test_monotone_in_modulus(self, a, b):
        lo, hi = sorted((abs(a), abs(b)))
        assert eta(lo) >= eta(hi)
        assert 0.0 <= eta(a) <= 1.0

    def test_midpoint_symmetry(self):
        # the exp glue is symmetric about the middle of the transition
        x = np.linspace(1.01, 1.99, 50)
        assert np.allclose(eta(x) + eta(3 - x), 1.0, atol=1e-14)

    def test_bad_spec(self):
        with pytest.raises(ValueError):
            BumpSpec("gaussian")
        with pytest.raises(ValueError):
            BumpSpec(outer_radius=3.0)


class TestFamilies:
    @pytest.mark.parametrize("name", ["grid0", "grid5", "shell", "dyadic"])
    def test_partition(self, families, name):
        assert partition_deviation(families[name]) <= 1e-10

    @pytest.mark.parametrize("name", ["grid0", "grid5", "shell", "dyadic"])
    def test_range_and_support(self, families, name):
        fam = families[name]
        for w in fam.windows.values():
            if not w.empty:
                assert w.values.min() >= 0 and w.values.max() <= 1
        assert support_violations(fam) == 0

    def test_active_count_bounded_by_overlap(self, families):
        fam = families["grid0"]
        count = np.zeros(G.shape, dtype=int)
        for w in fam.windows.values():
            if not w.empty:
                count[w.ix()] += 1
        # windows live on Q(k, 2r) = Q(k, 1): at most 3^2 of them touch a node
        assert count.max() <= 9

    def test_translation_symmetry(self, families):
        fam = families["grid0"]
        base = fam.dense(GridIndex((0, 0)))
        for k in [(1, 0), (2, -3), (-4, 5)]:
            shifted = np.roll(base, tuple(4 * x for x in k), axis=(0, 1))
            assert np.allclose(fam.dense(GridIndex(k)), shifted, atol=1e-14)

    def test_dyadic_support(self, families):
        fam = families["dyadic"]
        xi = np.linalg.norm(np.stack(G.xi_mesh(), -1), axis=-1)
        for lab in fam.labels:
            d = fam.dense(lab)
            if lab.k == 0:
                assert np.all(d[xi <= 1] == 1)
            else:
                off = (xi <= 2 ** (lab.k - 1)) | (xi >= 2 ** (lab.k + 1))
                assert np.all(d[off] == 0)

    def test_shell_locality(self, families):
        fam = families["shell"]
        xi = np.stack(G.xi_mesh(), -1)
        sup = np.max(np.abs(xi), axis=-1)
        # nodes at sup-norm near j^2 only see nearby shells
        for j in (2, 3):
            near = np.abs(sup - j ** 2) < 0.5
            for lab in fam.labels:
                if lab.j and abs(lab.j - j) > 1:
                    assert np.all(fam.dense(lab)[near] == 0)

    def test_bad_parameters_fail(self):
        with pytest.raises(ValueError):
            build_grid_bapu(0.0, 0.3, G)

    def test_reduced(self):
        fam = build_reduced_bapu(0.0, 0.5, G)
        assert fam.grid == G.reduced()
        assert fam.kind == "reduced_dim_bapu"
        assert partition_deviation(fam) <= 1e-10


@pytest.fixture(scope="module")
def masks():
    return build_lizorkin_masks(Grid(2, 64, 4 * math.pi))   # window 16


class TestLizorkinMasks:
    def test_exactly_one_mask_per_node(self, masks):
        count = np.zeros(masks.grid.shape, dtype=int)
        for w in masks.windows.values():
            if not w.empty:
                count[w.ix()] += (w.values > 0)
        assert np.all(count == 1)

    def test_twelve_per_shell(self, masks):
        shells = {}
        for lab in masks.labels:
            shells.setdefault(lab.k, set()).add(lab.t)
        for k, ts in shells.items():
            assert ts == set(range(1, 13))

    def test_near_axis_numbering(self, masks):
        xi = masks.grid.xi_axis()
        for lab, w in masks.windows.items():
            if lab.k < 2 or w.empty:
                continue
            x1 = xi[w.index[0]]
            near = np.all(np.abs(x1) <= 2 ** (lab.k - 1))
            assert near == (lab.t <= 4)


class TestPbapuConstant:
    def test_p2_stable_under_window_doubling(self):
        a = pbapu_constant(build_grid_bapu(0.0, 0.5, Grid(2, 128, 8 * math.pi)), 2)
        b = pbapu_constant(build_grid_bapu(0.0, 0.5, Grid(2, 256, 8 * math.pi)), 2)
        assert math.isfinite(a) and abs(a - b) / b <= 0.2

    def test_half_finite(self):
        assert math.isfinite(pbapu_constant(build_grid_bapu(0.0, 0.5, Grid(2, 64, 8 * math.pi)), 0.5))

    def test_sharp_masks_grow(self):
        a = pbapu_constant(build_lizorkin_masks(Grid(2, 64, 8 * math.pi)), 0.5)
        b = pbapu_constant(build_lizorkin_masks(Grid(2, 128, 8 * math.pi)), 0.5)
        assert b > a

    def test_rejects_bad_p(self):
        with pytest.raises(ValueError):
            pbapu_constant(build_dyadic_family(Grid(2, 16, 4.0)), 0)

import math

import numpy as np
import pytest

from alphamod.grid import Grid, SampledFunction, forward_transform
from alphamod.norms import SpaceParams, get_family
from alphamod.trace import extend, extension_profile, retraction_check, trace, trace_ratio

from conftest import band_limited

G2 = Grid(2, 64, 8 * math.pi)
G1 = G2.reduced()
SOURCE = SpaceParams("modulation_anisotropic", 2, 2, 0, third_r=1)
TARGET = SpaceParams("modulation", 2, 2, 0)


def test_trace_is_slice():
    f = band_limited(G2, 1)
    assert np.array_equal(trace(f).values, f.values[:, 0])


def test_trace_linear():
    f, g = band_limited(G2, 1), band_limited(G2, 2)
    lhs = trace(f * 3.0 + g * 1j).values
    assert np.array_equal(lhs, (f * 3.0).values[:, 0] + (g * 1j).values[:, 0])


def test_trace_rejects_dim_one():
    with pytest.raises(ValueError):
        trace(band_limited(G1, 1))


def test_extension_of_one_is_one_on_hyperplane():
    h = extend(SampledFunction(G1, np.ones(G1.shape)))
    assert np.allclose(h.values[:, 0], 1.0, atol=1e-15)


def test_profile_normalised():
    w = extension_profile(64, 8 * math.pi)
    assert w[0] == pytest.approx(1.0, abs=1e-15)
    assert np.isrealobj(w)


@pytest.mark.parametrize("seed", range(5))
def test_retraction(seed):
    assert retraction_check(band_limited(G1, seed)) <= 1e-10


def test_retraction_zero_and_linear():
    assert retraction_check(SampledFunction(G1, np.zeros(G1.shape))) == 0.0
    a, b = band_limited(G1, 3), band_limited(G1, 4)
    assert retraction_check(a * 2.0 + b * (-1.0)) <= 1e-10


def test_extension_blocks_vanish_far_from_hyperplane_slab():
    fam = get_family("grid", G2, 0.0, 0.5)
    F = forward_transform(extend(band_limited(G1, 6)))
    scale = np.abs(F.coefficients).max()
    for lab, w in fam.windows.items():
        if abs(lab.k[-1]) >= 3 and not w.empty:
            assert np.abs(F.coefficients[w.ix()] * w.values).max() <= 1e-12 * scale


def test_extension_bounded_by_trace_space_norm():
    # ||extend g||_source <= C ||g||_target with one C for the whole family
    from alphamod.norms import norm
    r = [norm(extend(g), SOURCE).total / norm(g, TARGET).total
         for g in (band_limited(G1, s) for s in range(8))]
    assert max(r) / min(r) < 2


class TestTraceRatio:
    def test_single_block_off_slab(self):
        x1, x2 = G2.x_mesh()
        f = SampledFunction(G2, np.exp(1j * (x1 + 3 * x2)))
        rep = trace_ratio(f, SOURCE, TARGET)
        assert math.isfinite(rep.ratio) and rep.ratio > 0
        assert rep.ratio == pytest.approx(rep.trace_norm / rep.source_norm)

    def test_extension_ratio(self):
        from alphamod.norms import norm
        g = band_limited(G1, 2)
        rep = trace_ratio(extend(g), SOURCE, TARGET)
        assert rep.trace_norm == pytest.approx(norm(g, TARGET).total, rel=1e-10)

    def test_scale_invariant(self):
        f = band_limited(G2, 3)
        assert trace_ratio(f * 7.5, SOURCE, TARGET).ratio == pytest.approx(
            trace_ratio(f, SOURCE, TARGET).ratio, rel=1e-12)

    def test_zero_source(self):
        with pytest.raises(ValueError):
            trace_ratio(SampledFunction(G2, np.zeros(G2.shape)), SOURCE, TARGET)

    def test_report_dict(self):
        d = trace_ratio(band_limited(G2, 3), SOURCE, TARGET).as_dict()
        assert d["params_source"]["third_r"] == 1

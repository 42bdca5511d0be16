import math

import numpy as np
import pytest

from alphamod.grid import Grid, SampledFunction, load_function, save_function


@pytest.mark.parametrize("fmt", ["csv", "binary"])
@pytest.mark.parametrize("dim", [1, 2, 3])
def test_round_trip_is_exact(tmp_path, fmt, dim, rng):
    g = Grid(dim, 8, 2 * math.pi)
    f = SampledFunction(g, rng.normal(size=g.shape) + 1j * rng.normal(size=g.shape))
    path = tmp_path / f"f.{fmt}"
    save_function(path, f, fmt)
    back = load_function(path)
    assert back.grid == g
    assert np.array_equal(back.values, f.values)


def test_csv_layout(tmp_path):
    g = Grid(1, 8, 1.5)
    f = SampledFunction(g, np.arange(8) + 0.5j)
    save_function(tmp_path / "f.csv", f)
    lines = (tmp_path / "f.csv").read_text().splitlines()
    assert lines[:4] == ["AMGRID1", "n,M,L", "1,8,1.5", "index,re,im"]
    assert lines[5] == "1,1.0,0.5"
    assert len(lines) == 4 + 8


def test_wrong_tag(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("NOTGRID\nn,M,L\n1,8,1.0\n")
    with pytest.raises(ValueError, match="AMGRID1"):
        load_function(p)


def test_bad_row_reports_line(tmp_path):
    g = Grid(1, 8, 1.0)
    save_function(tmp_path / "f.csv", SampledFunction(g, np.zeros(8)))
    text = (tmp_path / "f.csv").read_text().replace("3,0.0,0.0", "3,zero,0.0")
    (tmp_path / "f.csv").write_text(text)
    with pytest.raises(ValueError, match=":8:"):
        load_function(tmp_path / "f.csv")


def test_missing_samples(tmp_path):
    g = Grid(1, 8, 1.0)
    save_function(tmp_path / "f.csv", SampledFunction(g, np.zeros(8)))
    lines = (tmp_path / "f.csv").read_text().splitlines()[:-2]
    (tmp_path / "f.csv").write_text("\n".join(lines) + "\n")
    with pytest.raises(ValueError, match="missing"):
        load_function(tmp_path / "f.csv")


def test_truncated_binary(tmp_path):
    g = Grid(1, 8, 1.0)
    save_function(tmp_path / "f.bin", SampledFunction(g, np.ones(8)), "binary")
    raw = (tmp_path / "f.bin").read_bytes()[:-16]
    (tmp_path / "f.bin").write_bytes(raw)
    with pytest.raises(ValueError, match="payload"):
        load_function(tmp_path / "f.bin")


def test_unknown_format(tmp_path):
    g = Grid(1, 8, 1.0)
    with pytest.raises(ValueError):
        save_function(tmp_path / "f", SampledFunction(g, np.ones(8)), "hdf5")

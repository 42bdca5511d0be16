import io
import json
import math

import numpy as np
import pytest

from alphamod import cli
from alphamod.grid import Grid, SampledFunction, save_function


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def report(*argv):
    code, out, _ = call(*argv)
    assert code == 0
    return json.loads(out)


class TestParsers:
    @pytest.mark.parametrize("text,value", [
        ("8pi", 8 * math.pi), ("8*pi", 8 * math.pi), ("pi", math.pi),
        ("2.5", 2.5), ("inf", math.inf), ("-1", -1.0),
    ])
    def test_real(self, text, value):
        assert cli.parse_real(text) == value

    def test_range(self):
        assert list(cli.parse_range("2:6")) == [2, 3, 4, 5, 6]
        assert list(cli.parse_range("3,11")) == [3, 11]

    def test_grid_pair(self):
        assert cli.parse_grid_pair("64,8pi") == (64, 8 * math.pi)

    def test_bad_values(self):
        for bad in ("eight", ""):
            with pytest.raises(ValueError):
                cli.parse_real(bad)
        with pytest.raises(ValueError):
            cli.parse_int("2.5")


class TestConfig:
    def test_unknown_key_names_key_and_line(self, tmp_path):
        path = tmp_path / "bad.ini"
        path.write_text("[grid]\nM = 64\n\nbogus = 1\n")
        code, _, err = call("norm", "--config", str(path))
        assert code == 2
        assert "grid.bogus" in err and "line 4" in err

    def test_unknown_section(self, tmp_path):
        path = tmp_path / "bad.ini"
        path.write_text("[extras]\nx = 1\n")
        code, _, err = call("norm", "--config", str(path))
        assert code == 2 and "extras" in err

    def test_bad_value_reported(self, tmp_path):
        path = tmp_path / "bad.ini"
        path.write_text("[space]\np = two\n")
        code, _, err = call("norm", "--config", str(path))
        assert code == 2 and "space.p" in err and "line 2" in err

    def test_flag_overrides_file(self, tmp_path):
        path = tmp_path / "c.ini"
        path.write_text("[grid]\nM = 64\nL = 8pi\n[space]\nkind = modulation\np = 1\nq = 1\n")
        rep = report("norm", "--config", str(path), "--p", "2", "--M", "32")
        assert rep["config"]["space"]["p"] == 2.0
        assert rep["config"]["grid"]["M"] == 32
        assert rep["config"]["space"]["q"] == 1.0

    def test_minimal_file_fills_defaults(self, tmp_path):
        path = tmp_path / "c.ini"
        path.write_text("[grid]\nM = 32\n")
        rep = report("norm", "--config", str(path))
        assert rep["config"]["grid"] == {"n": 2, "M": 32, "L": 8 * math.pi}
        assert rep["schema"] == "AMREP1"
        assert rep["command"] == "norm"


def test_reports_byte_identical():
    argv = ("norm", "--kind", "alpha_grid", "--alpha", "0.5", "--p", "1", "--q", "2",
            "--grid", "32,8pi", "--seed", "3")
    assert call(*argv)[1] == call(*argv)[1]


def test_covering_grid_has_no_gap():
    stats = report("covering", "--kind", "grid", "--alpha", "0", "--grid", "64,8pi",
                   "--window", "4")["result"]["stats"]
    assert stats["coverage_gap"] == 0
    assert stats["max_overlap"] <= stats["n0"]


def test_covering_csv(tmp_path):
    rep = tmp_path / "r.json"
    code, out, err = call("covering", "--kind", "grid", "--alpha", "0", "--grid", "32,8pi",
                          "--window", "2", "--format", "csv", "--report", str(rep))
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert lines[0] == "label_kind,label,center_1,center_2,half_side"
    assert len(lines) - 1 == json.loads(rep.read_text())["result"]["stats"]["elements"]


def test_bapu_check():
    res = report("bapu-check", "--kind", "grid", "--alpha", "0", "--grid", "32,8pi")["result"]
    assert res["partition_deviation"] <= 1e-12
    assert res["support_violations"] == 0


def test_norm_from_file(tmp_path):
    g = Grid(2, 32, 8 * math.pi)
    x1, x2 = g.x_mesh()
    path = tmp_path / "f.amgrid"
    save_function(path, SampledFunction(g, np.exp(1j * (x1 + 2 * x2))))
    res = report("norm", "--input", str(path), "--kind", "modulation",
                 "--p", "inf", "--q", "2")["result"]
    # single pure mode: the block at its node is the mode itself
    assert res["total"] == pytest.approx(1.0, rel=1e-12)
    assert res["grid"]["M"] == 32


def test_trace_check():
    res = report("trace-check", "--theorem", "1", "--p", "2", "--q", "2", "--s", "0",
                 "--grid", "32,8pi")["result"]
    assert res["ratio"] == pytest.approx(res["trace_norm"] / res["source_norm"])


def test_sweep_sharp_plotdata(tmp_path):
    rep = tmp_path / "r.json"
    code, out, _ = call("sweep", "--theorem", "sharp1", "--grid", "256,8pi", "--Ns", "2:4",
                        "--format", "plotdata", "--report", str(rep))
    assert code == 0
    rows = np.loadtxt(io.StringIO(out))
    assert rows[:, 0].tolist() == [2, 3, 4]
    assert np.all(np.diff(rows[:, 1]) > 0)
    assert json.loads(rep.read_text())["result"]["fit"]["slope"] > 0


def test_verify_all_subset():
    code, out, _ = call("verify-all", "--only", "11")
    assert code == 0
    assert out.splitlines()[0].startswith("[PASS] criterion 11")
    assert out.splitlines()[-1] == "1/1 criteria passed"


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as e:
        cli.main(["norm", "--kind", "nonsense"])
    assert e.value.code == 2

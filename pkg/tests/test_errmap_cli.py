import io
import math
import os

import numpy as np
import pytest

from faddeeva_ice import cli, errmap
from faddeeva_ice.bench import bench_points, run_benchmark
from faddeeva_ice.core import IncompleteCosineW
from faddeeva_ice.errmap import (
    HEADLINE_GRID_TEXT,
    Axis,
    ErrorMap,
    GridSpec,
    PartSummary,
    compute_error_map,
    format_matrix_csv,
    log10_relative_error,
    parse_matrix_csv,
    write_error_map,
)
from faddeeva_ice.errors import OracleIntegrityError, ParameterError
from faddeeva_ice.weideman import WeidemanW

SMALL = "x:lin:0:15:2,y:log:1e-4:15:2"


def run(argv, stdin=None, monkeypatch=None):
    out = io.StringIO()
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = cli.main(argv, out)
    return code, out.getvalue()


class TestGrid:
    def test_parse_default(self):
        g = GridSpec.parse(HEADLINE_GRID_TEXT)
        assert (g.x.count, g.y.count) == (200, 200)
        assert g.x.scale == "lin" and g.y.scale == "log"
        assert GridSpec.parse(str(g)) == g

    def test_open_interval(self):
        xs = Axis(0.0, 15.0, 200).values()
        assert xs[0] == pytest.approx(15 / 400) and xs[-1] == pytest.approx(15 - 15 / 400)
        ys = Axis(1e-4, 15.0, 200, "log").values()
        assert 1e-4 < ys[0] and ys[-1] < 15
        assert np.allclose(np.diff(np.log10(ys)), np.log10(15e4) / 200)

    def test_mesh_orientation(self):
        g = GridSpec.parse(SMALL)
        z = g.mesh()
        assert z.shape == (2, 2)
        assert z[0, 1].real == g.x.values()[1] and z[1, 0].imag == g.y.values()[1]

    @pytest.mark.parametrize(
        "text",
        [
            "x:lin:0:15:200",
            "x:lin:15:0:200,y:log:1e-4:15:200",
            "x:lin:0:15:1,y:log:1e-4:15:200",
            "x:lin:0:15:200,y:log:0:15:200",
            "x:cubic:0:15:200,y:log:1e-4:15:200",
            "x:lin:a:15:200,y:log:1e-4:15:200",
            "x:lin:0:15,y:log:1e-4:15:200",
        ],
    )
    def test_invalid(self, text):
        with pytest.raises(ParameterError):
            GridSpec.parse(text)


class TestErrors:
    def test_relative_error(self):
        ref = np.array([1 + 2j, 1e-310 + 1j, 4 + 0j])
        approx = np.array([1.001 + 2j, 0 + 1.1j, 4 + 0j])
        re, im, n_re, n_im = log10_relative_error(approx, ref)
        assert re[0] == pytest.approx(-3, abs=1e-9)
        assert np.isnan(re[1]) and np.isnan(im[2])
        assert re[2] == -math.inf and im[0] == -math.inf
        assert (n_re, n_im) == (1, 1)

    def test_summary_recomputable(self):
        rng = np.random.default_rng(1)
        raw = 10 ** rng.uniform(-16, -3, (30, 40))
        s = PartSummary.of(np.log10(raw))
        assert s.max == np.log10(raw.max())
        assert s.median == np.log10(np.percentile(raw, 50, method="nearest"))
        assert s.p99 == np.log10(np.percentile(raw, 99, method="nearest"))

    def test_holds(self):
        g = GridSpec.parse(SMALL)
        m = ErrorMap(g, "ice", np.full((2, 2), -13.0), np.full((2, 2), -9.0))
        assert m.holds(1e-12, 1e-8)
        assert not m.holds(1e-12, 1e-10)
        assert m.holds()


class TestCsv:
    def test_layout(self):
        text = format_matrix_csv(np.array([1.0, 2.5]), np.array([0.1, 3.0]), np.array([[-1.0, -2.0], [-3.0, -math.inf]]))
        assert text == "y\\x,1,2.5\n0.10000000000000001,-1,-2\n3,-3,-inf\n"

    def test_round_trip(self, tmp_path):
        g = GridSpec.parse("x:lin:0:15:7,y:log:1e-4:15:5")
        m = compute_error_map(g, IncompleteCosineW())
        files = write_error_map(m, str(tmp_path / "m"))
        xs, ys, re = parse_matrix_csv(open(files[0]).read())
        _, _, im = parse_matrix_csv(open(files[1]).read())
        assert np.array_equal(xs, g.x.values()) and np.array_equal(ys, g.y.values())
        np.testing.assert_array_equal(re, m.log10_delta_re)
        np.testing.assert_array_equal(im, m.log10_delta_im)

    def test_no_partial_output_on_integrity_error(self, tmp_path, monkeypatch):
        def broken(z):
            raise OracleIntegrityError("series and continued fraction differ")

        monkeypatch.setattr(errmap, "w_ref_array", broken)
        prefix = str(tmp_path / "bad")
        code = cli.main(["errmap", "--grid", SMALL, "--out", prefix], io.StringIO())
        assert code != 0
        assert os.listdir(tmp_path) == []


class TestEval:
    def test_rows(self, monkeypatch):
        code, text = run(["eval"], "0 1\n# comment\n\n2.5 0.5\n", monkeypatch)
        rows = [r.split() for r in text.splitlines()]
        assert code == 0 and len(rows) == 2
        assert float(rows[0][2]) == pytest.approx(0.42758357615580700, abs=1e-12)
        assert float(rows[0][3]) == 0.0
        assert len(rows[1]) == 4

    def test_origin_close_to_one(self, monkeypatch):
        _, text = run(["eval"], "0 0\n", monkeypatch)
        assert abs(float(text.split()[2]) - 1) < 1e-9

    @pytest.mark.xfail(strict=True, reason="aliasing floor 5.6e-10 at the origin with the default parameters")
    def test_origin_within_1e12(self, monkeypatch):
        _, text = run(["eval"], "0 0\n", monkeypatch)
        assert abs(float(text.split()[2]) - 1) < 1e-12

    def test_domain_row(self, monkeypatch):
        code, text = run(["eval"], "1 -1\n0 1\n", monkeypatch)
        first, second = text.splitlines()
        assert code == 0
        assert first == "1.0 -1.0 ERROR domain: Im[z] > 0 required"
        assert "ERROR" not in second

    def test_reflect_flag(self, monkeypatch):
        _, text = run(["eval", "--lower-half", "reflect"], "1 -1\n", monkeypatch)
        assert "ERROR" not in text

    def test_parse_error_has_line_number(self, monkeypatch, capsys):
        with pytest.raises(SystemExit) as exc:
            run(["eval"], "0 1\n0 one\n", monkeypatch)
        assert exc.value.code == 2
        assert "line 2" in capsys.readouterr().err

    @pytest.mark.parametrize("engine", ["weideman", "oracle"])
    def test_other_engines(self, engine, tmp_path):
        pts = tmp_path / "p.txt"
        pts.write_text("5 5\n")
        code, text = run(["eval", "--engine", engine, "--points", str(pts)])
        assert code == 0
        assert abs(float(text.split()[2]) - 0.056965439887706901) < 1e-9


class TestErrmapCommand:
    def test_smoke_shape(self, tmp_path):
        prefix = str(tmp_path / "s")
        code, text = run(["errmap", "--grid", SMALL, "--out", prefix])
        assert code == 0
        for part in ("re", "im"):
            _, _, m = parse_matrix_csv(open(f"{prefix}_{part}.csv").read())
            assert m.shape == (2, 2)
        assert os.path.exists(prefix + "_summary.txt")
        assert "log10_delta_re" in text

    def test_exit_code_contract(self, tmp_path):
        prefix = str(tmp_path / "t")
        grid = "x:lin:1:15:4,y:log:1e-2:15:4"
        ok, text_ok = run(["errmap", "--grid", grid, "--out", prefix, "--threshold-re", "1e-3", "--threshold-im", "1e-3"])
        bad, text_bad = run(["errmap", "--grid", grid, "--out", prefix, "--threshold-re", "1e-30"])
        assert (ok, bad) == (0, 1)
        assert "threshold_re: 0.001" in text_ok and "max=" in text_ok
        assert "FAIL" in text_bad and "1e-30" in text_bad

    def test_oracle_engine_rejected(self, tmp_path):
        with pytest.raises(SystemExit):
            run(["errmap", "--engine", "oracle", "--grid", SMALL, "--out", str(tmp_path / "o")])

    def test_bad_grid_is_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            run(["errmap", "--grid", "x:lin:0:1:1,y:lin:1:2:2", "--out", str(tmp_path / "g")])
        assert exc.value.code == 2

    def test_weideman_engine(self, tmp_path):
        code, text = run(["errmap", "--engine", "weideman", "--grid", SMALL, "--out", str(tmp_path / "w")])
        assert code == 0 and "engine: weideman" in text


class TestCoeffs:
    def test_default_table(self):
        code, text = run(["coeffs"])
        rows = [r.split() for r in text.splitlines() if not r.startswith("#")]
        assert code == 0 and len(rows) == 16
        assert rows[0][0] == "1" and float(rows[0][1]) == math.pi / 16

    def test_single_row(self):
        _, text = run(["coeffs", "--M", "1"])
        assert len([r for r in text.splitlines() if not r.startswith("#")]) == 1

    def test_byte_identical(self):
        assert run(["coeffs"])[1] == run(["coeffs"])[1]

    def test_invalid_params(self):
        with pytest.raises(SystemExit) as exc:
            run(["coeffs", "--h", "-1"])
        assert exc.value.code == 2


class TestBench:
    def test_size_one(self):
        code, text = run(["bench", "--size", "1", "--repetitions", "1"])
        assert code == 0
        assert "ice:" in text and "weideman:" in text and "ratio" in text

    def test_deterministic(self):
        engines = [IncompleteCosineW(), WeidemanW()]
        a = run_benchmark(engines, 500, 1, seed=7)
        b = run_benchmark(engines, 500, 1, seed=7)
        for name in ("ice", "weideman"):
            assert a["engines"][name]["checksum"] == b["engines"][name]["checksum"]
        assert run_benchmark(engines, 500, 1, seed=8)["engines"]["ice"]["checksum"] != a["engines"]["ice"]["checksum"]

    def test_timing_is_observational(self):
        z = bench_points(100, 3)
        assert np.all(z.imag > 0)
        f = IncompleteCosineW()
        assert np.array_equal(f(z), f(bench_points(100, 3)))

    def test_seed_recorded(self):
        _, text = run(["bench", "--size", "10", "--repetitions", "1", "--seed", "42", "--engine", "ice"])
        assert "seed: 42" in text

    @pytest.mark.parametrize("bad", ["0", "-4", "2.5"])
    def test_bad_size(self, bad):
        with pytest.raises(SystemExit):
            run(["bench", "--size", bad])

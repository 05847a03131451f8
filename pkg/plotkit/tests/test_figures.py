import json
from pathlib import Path

import pytest

from plotkit import FigureSpec, MissingColumnsError, extract_series, render
from plotkit.cli import main

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


def _golden(name):
    with open(GOLDEN / name, encoding="utf-8") as fh:
        return json.load(fh)


class TestSeriesExtraction:
    def test_ccdf_series_match_golden(self):
        spec = FigureSpec(csv_path=str(DATA / "ccdf_sample.csv"), figure_kind="ccdf")
        assert extract_series(spec) == _golden("ccdf_series.json")

    def test_fit_series_match_golden(self):
        spec = FigureSpec(csv_path=str(DATA / "fit_sample.csv"),
                          figure_kind="fit_overlay")
        assert extract_series(spec) == _golden("fit_series.json")

    def test_engine_styles(self):
        spec = FigureSpec(csv_path=str(DATA / "ccdf_sample.csv"), figure_kind="ccdf")
        series = extract_series(spec)
        for label, entry in series.items():
            engine = label.split("|")[1]
            assert entry["style"] == ("line" if engine == "analytic" else "marker")

    def test_fit_overlay_styles(self):
        spec = FigureSpec(csv_path=str(DATA / "fit_sample.csv"),
                          figure_kind="fit_overlay")
        series = extract_series(spec)
        assert series["hj|empirical"]["style"] == "marker"
        assert series["hj|fitted"]["style"] == "line"

    def test_mode_filter(self):
        spec = FigureSpec(csv_path=str(DATA / "ccdf_sample.csv"),
                          figure_kind="ccdf", mode_filter=("JointDts",))
        series = extract_series(spec)
        assert set(series) == {"JointDts|analytic", "JointDts|sim"}

    def test_empty_filter_keeps_all_modes(self):
        spec = FigureSpec(csv_path=str(DATA / "ccdf_sample.csv"), figure_kind="ccdf")
        modes = {label.split("|")[0] for label in extract_series(spec)}
        assert modes == {"CommNoDts", "BistaticDts", "MonoDts", "JointDts"}

    def test_sweep_series(self):
        spec = FigureSpec(csv_path=str(DATA / "sweep_sample.csv"),
                          figure_kind="sweep_line", mode_filter=("JointDts",))
        series = extract_series(spec)
        assert len(series) == 7  # one per threshold
        for entry in series.values():
            assert entry["x"] == [2.0, 4.0, 8.0]

    def test_missing_columns_named(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("theta_db,value\n0,1\n", encoding="utf-8")
        spec = FigureSpec(csv_path=str(bad), figure_kind="ccdf")
        with pytest.raises(MissingColumnsError) as err:
            extract_series(spec)
        assert "mode" in err.value.missing and "engine" in err.value.missing

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            FigureSpec(csv_path="x.csv", figure_kind="pie")


class TestRender:
    def test_ccdf_overlay_png(self, tmp_path):
        spec = FigureSpec(csv_path=str(DATA / "ccdf_sample.csv"), figure_kind="ccdf")
        out = tmp_path / "fig.png"
        render(spec, str(out))
        assert out.stat().st_size > 5000

    def test_render_is_deterministic(self, tmp_path):
        spec = FigureSpec(csv_path=str(DATA / "ccdf_sample.csv"), figure_kind="ccdf")
        a, b = tmp_path / "a.png", tmp_path / "b.png"
        render(spec, str(a))
        render(spec, str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_fit_overlay_svg_deterministic(self, tmp_path):
        spec = FigureSpec(csv_path=str(DATA / "fit_sample.csv"),
                          figure_kind="fit_overlay")
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        render(spec, str(a))
        render(spec, str(b))
        assert a.read_bytes() == b.read_bytes()
        assert b.stat().st_size > 5000

    def test_sweep_line_and_surface(self, tmp_path):
        line = FigureSpec(csv_path=str(DATA / "sweep_sample.csv"),
                          figure_kind="sweep_line", mode_filter=("CommNoDts",))
        render(line, str(tmp_path / "line.png"))
        surface = FigureSpec(csv_path=str(DATA / "sweep_sample.csv"),
                             figure_kind="sweep_surface",
                             mode_filter=("BistaticDts",))
        render(surface, str(tmp_path / "surface.png"))
        assert (tmp_path / "line.png").exists()
        assert (tmp_path / "surface.png").exists()


class TestCli:
    def test_render_command(self, tmp_path):
        out = tmp_path / "fig.png"
        rc = main(["--csv", str(DATA / "ccdf_sample.csv"), "--kind", "ccdf",
                   "--out", str(out), "--modes", "JointDts,MonoDts"])
        assert rc == 0
        assert out.exists()

    def test_missing_column_exit_code(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,b\n1,2\n", encoding="utf-8")
        rc = main(["--csv", str(bad), "--kind", "ccdf",
                   "--out", str(tmp_path / "x.png")])
        assert rc == 2

    def test_missing_file_exit_code(self, tmp_path):
        rc = main(["--csv", str(tmp_path / "none.csv"), "--kind", "ccdf",
                   "--out", str(tmp_path / "x.png")])
        assert rc == 2

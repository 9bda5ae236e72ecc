"""CSV/SVG export and the run manifest."""

import hashlib
import json

import numpy as np
import pytest

from magnonchain.config import ExperimentConfig
from magnonchain.output import RunWriter, format_number, heatmap_svg, write_csv


class TestFormatNumber:
    def test_doubles_round_trip(self):
        for x in (0.1, 1 / 3, np.pi, 1e-300, -2.5e17):
            assert float(format_number(x)) == x

    def test_seventeen_significant_digits(self):
        assert format_number(0.1) == "0.10000000000000001"

    def test_integers_stay_integral(self):
        assert format_number(3) == "3"
        assert format_number(np.int64(-2)) == "-2"

    def test_bools_and_strings(self):
        assert format_number(True) == "1"
        assert format_number("label") == "label"


class TestWriteCsv:
    def test_exact_bytes(self, tmp_path):
        path = tmp_path / "t.csv"
        write_csv(path, ("a", "b"), [(1, 0.5), (2, "x")])
        assert path.read_bytes() == b"a,b\n1,0.5\n2,x\n"

    def test_no_carriage_returns(self, tmp_path):
        path = tmp_path / "t.csv"
        write_csv(path, ("a",), [(k,) for k in range(5)])
        assert b"\r" not in path.read_bytes()


class TestHeatmapSvg:
    def test_structure(self):
        svg = heatmap_svg(np.arange(6.0).reshape(2, 3), "t", "x", "y")
        assert svg.startswith("<svg ")
        assert svg.rstrip().endswith("</svg>")
        # background + 6 cells + 2 frames + 64 colorbar segments
        assert svg.count("<rect") == 1 + 6 + 2 + 64

    def test_deterministic(self):
        m = np.linspace(0.0, 1.0, 12).reshape(3, 4)
        assert heatmap_svg(m, "a", "b", "c") == heatmap_svg(m, "a", "b", "c")

    def test_flat_matrix_ok(self):
        svg = heatmap_svg(np.ones((2, 2)), "t", "x", "y")
        assert "<svg" in svg

    def test_rejects_bad_shapes(self):
        with pytest.raises(ValueError):
            heatmap_svg(np.zeros(3), "t", "x", "y")
        with pytest.raises(ValueError):
            heatmap_svg(np.zeros((0, 2)), "t", "x", "y")


class TestRunWriter:
    def _config(self, out):
        return ExperimentConfig(kind="spectrum", L=5, out=str(out))

    def test_manifest_references_every_file(self, tmp_path):
        writer = RunWriter(tmp_path)
        writer.csv("a.csv", ("x",), [(1,)])
        writer.svg("b.svg", np.eye(2), "t", "x", "y")
        manifest = writer.finish(self._config(tmp_path), {"answer": np.int64(42)})
        on_disk = {p.name for p in tmp_path.iterdir()} - {"manifest.json"}
        listed = [o.path for o in manifest.outputs]
        assert sorted(listed) == sorted(on_disk)
        assert len(listed) == len(set(listed))
        for record in manifest.outputs:
            data = (tmp_path / record.path).read_bytes()
            assert hashlib.sha256(data).hexdigest() == record.sha256
            assert len(data) == record.bytes
        assert manifest.results == {"answer": 42}

    def test_manifest_json_round_trips(self, tmp_path):
        writer = RunWriter(tmp_path)
        writer.csv("a.csv", ("x",), [(0.125,)])
        with writer.timed("total"):
            pass
        writer.finish(self._config(tmp_path))
        payload = json.loads((tmp_path / "manifest.json").read_text())
        assert payload["version"]
        assert payload["config"]["kind"] == "spectrum"
        assert "total" in payload["timings"]

    def test_finish_only_once(self, tmp_path):
        writer = RunWriter(tmp_path)
        writer.finish(self._config(tmp_path))
        with pytest.raises(RuntimeError):
            writer.finish(self._config(tmp_path))

    def test_timed_accumulates(self, tmp_path):
        writer = RunWriter(tmp_path)
        with writer.timed("step"):
            pass
        with writer.timed("step"):
            pass
        manifest = writer.finish(self._config(tmp_path))
        assert manifest.timings["step"] >= 0.0

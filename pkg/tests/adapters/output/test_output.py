"""
Тесты записи CSV, JSON и SVG артефактов
"""

import csv
import math
from pathlib import Path

import numpy as np

from chiralflow.adapters.output import (
    LineTrace,
    SvgLineChart,
    format_float,
    to_jsonable,
    write_bath_csv,
    write_flow_csv,
    write_json,
    write_spectrum_csv,
    write_sweep_csv,
    write_table,
    write_trajectory_csv,
)
from chiralflow.adapters.output.json_writer import dumps
from chiralflow.core.domain.bath import BathModes
from chiralflow.core.domain.chain import ChainParams
from chiralflow.core.domain.experiment import EngineKind
from chiralflow.core.domain.flow import FlowSeries
from chiralflow.core.domain.state import Trajectory
from chiralflow.core.services.model import build_spectrum
from chiralflow.core.services.observables import segment_flow


def _read(path: Path) -> list:
    with open(path, encoding="utf-8", newline="") as f:
        return list(csv.reader(f))


class TestFormatFloat:
    def test_round_trip_precision(self):
        assert float(format_float(0.1)) == 0.1
        assert format_float(0.1) == "0.10000000000000001"

    def test_special_values(self):
        assert format_float(None) == ""
        assert format_float(True) == "1"
        assert format_float(np.int64(3)) == "3"
        assert format_float("ok") == "ok"


class TestCsv:
    def test_table_line_endings(self, tmp_path):
        path = write_table(tmp_path / "nested" / "t.csv", ["a", "b"], [[1, 0.5], [2, None]])
        assert path.read_bytes() == b"a,b\r\n1,0.5\r\n2,\r\n"

    def test_flow_table(self, tmp_path):
        t = np.linspace(0.0, 1.0, 5)
        R = np.array([1.0, 1.0, -1.0, -1.0, 1.0])
        series = FlowSeries(t=t, D=np.full(5, 0.5), R=R)
        rows = _read(write_flow_csv(tmp_path / "flow.csv", series, segment_flow(R, t)))
        assert rows[0] == ["t", "D", "R", "sign"]
        assert [row[3] for row in rows[1:]] == ["1", "1", "-1", "-1", "1"]

    def test_trajectory_without_bath(self, tmp_path):
        trajectory = Trajectory(t=[0.0, 1.0], c0=0.6, c=[[0.8, 0.0], [0.0, 0.5j]])
        rows = _read(write_trajectory_csv(tmp_path / "a.csv", trajectory, verbose_bath=True))
        assert rows[0][:5] == ["t", "re_c1", "im_c1", "re_c2", "im_c2"]
        assert rows[0][5:] == ["bath_population", "norm_defect"]
        assert float(rows[2][4]) == 0.5
        assert math.isclose(float(rows[2][5]), 0.39)

    def test_trajectory_with_bath_columns(self, tmp_path):
        trajectory = Trajectory(t=[0.0], c0=0.0, c=[[0.6]], f=[[0.8, 0.0]])
        rows = _read(write_trajectory_csv(tmp_path / "a.csv", trajectory, verbose_bath=True))
        assert rows[0][-4:] == ["re_f1", "im_f1", "re_f2", "im_f2"]
        assert float(rows[1][rows[0].index("norm_defect")]) < 1e-15

    def test_spectrum_and_bath(self, tmp_path):
        spectrum = build_spectrum(ChainParams(N=4, D=0.5))
        rows = _read(write_spectrum_csv(tmp_path / "spectrum.csv", spectrum))
        assert rows[0] == ["n", "E_n", "omega_n"]
        assert [row[0] for row in rows[1:]] == ["1", "2", "3", "4"]

        modes = BathModes(omega_k=[0.1, 0.2], g_k=[0.3, 0.4])
        rows = _read(write_bath_csv(tmp_path / "bath.csv", modes))
        assert rows[2] == ["2", "0.20000000000000001", "0.40000000000000002"]

    def test_sweep_table(self, tmp_path):
        rows = [
            {"value": 0.0, "n_switch": 4, "a_mod": 0.1, "positive_fraction": 0.5,
             "backflow": 0.2, "status": "ok", "error": ""},
            {"value": 1.0, "n_switch": None, "a_mod": None, "positive_fraction": None,
             "backflow": None, "status": "failed", "error": "lambda"},
        ]
        table = _read(write_sweep_csv(tmp_path / "sweep.csv", rows))
        assert table[0][0] == "value"
        assert table[2] == ["1", "", "", "", "", "failed", "lambda"]


class TestJson:
    def test_to_jsonable(self):
        data = to_jsonable(
            {
                "z": 1 + 2j,
                "array": np.array([1.0, np.inf]),
                "engine": EngineKind.ANALYTIC3,
                "path": Path("results") / "a",
                1: np.bool_(True),
            }
        )
        assert data == {
            "z": [1.0, 2.0],
            "array": [1.0, None],
            "engine": "analytic3",
            "path": "results/a",
            "1": True,
        }

    def test_stable_output(self, tmp_path):
        text = dumps({"b": 1, "a": [0.5]})
        assert text.endswith("\n")
        assert text.index('"a"') < text.index('"b"')
        path = write_json(tmp_path / "out" / "r.json", {"b": 1, "a": [0.5]})
        assert path.read_text(encoding="utf-8") == text


class TestSvg:
    def test_polylines_and_legend(self, tmp_path):
        t = np.linspace(0.0, 1.0, 11)
        traces = [LineTrace(t, np.sin(t), "R(t)"), LineTrace(t, -np.sin(t), "A<B")]
        chart = SvgLineChart()
        svg = chart.render(traces, title="Поток", y_label="R")
        assert svg.count("<polyline") == 2
        assert "R(t)" in svg
        assert "A&lt;B" in svg
        assert svg == chart.render(traces, title="Поток", y_label="R")

    def test_flat_series(self, tmp_path):
        t = np.linspace(0.0, 1.0, 3)
        path = SvgLineChart().write(tmp_path / "flat.svg", [LineTrace(t, np.zeros(3), "D")])
        assert path.read_text(encoding="utf-8").startswith("<?xml")

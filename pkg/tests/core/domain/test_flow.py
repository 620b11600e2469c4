"""
Тесты моделей матрицы плотности и потока информации
"""

import numpy as np
import pytest

from chiralflow.core.domain.errors import DensityMatrixError, GridError, ShapeError
from chiralflow.core.domain.flow import FlowSegment, FlowSegments, FlowSeries, ReducedDensityMatrix


class TestReducedDensityMatrix:
    def test_valid_matrix(self):
        rho = ReducedDensityMatrix(np.diag([0.25, 0.75]))
        assert rho.dim == 2
        assert rho.min_eigenvalue == pytest.approx(0.25)

    def test_non_square(self):
        with pytest.raises(ShapeError):
            ReducedDensityMatrix(np.zeros((2, 3)))

    def test_non_hermitian(self):
        with pytest.raises(DensityMatrixError):
            ReducedDensityMatrix(np.array([[0.5, 0.1], [0.2, 0.5]]))

    def test_trace_must_be_one(self):
        with pytest.raises(DensityMatrixError):
            ReducedDensityMatrix(np.eye(2))


class TestFlowSeries:
    def test_distance_bounds(self):
        t = np.linspace(0.0, 1.0, 3)
        with pytest.raises(DensityMatrixError):
            FlowSeries(t=t, D=[1.0, 1.2, 0.5], R=np.zeros(3))

    def test_grid_must_increase(self):
        with pytest.raises(GridError):
            FlowSeries(t=[0.0, 1.0, 1.0], D=np.ones(3), R=np.zeros(3))

    def test_lengths_must_agree(self):
        with pytest.raises(ShapeError):
            FlowSeries(t=[0.0, 1.0], D=np.ones(3), R=np.zeros(3))


class TestFlowSegments:
    def test_metrics(self):
        segments = FlowSegments(
            segments=(
                FlowSegment(t_start=0.0, t_end=1.0, sign=1, start_index=0, end_index=1),
                FlowSegment(t_start=2.0, t_end=3.0, sign=-1, start_index=2, end_index=3),
            ),
            signs=np.array([1, 1, -1, -1]),
            a_mod=0.5,
            positive_fraction=0.5,
            backflow=0.25,
        )
        assert segments.n_switch == 1
        assert segments.segments[1].duration == 1.0
        data = segments.to_dict()
        assert data["metrics"]["n_switch"] == 1
        assert data["metrics"]["degenerate"] is False
        assert data["segments"][0]["sign"] == 1

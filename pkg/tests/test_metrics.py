import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from velfield import (
    EmptyDiskError,
    ExcludedPoint,
    FieldGrid,
    GridSpec,
    LoudspeakerArray,
    ShapeError,
    SourceSpec,
    UndefinedConditioningError,
    condition_number,
    direction_error,
    mean_error_over_disk,
    numerical_rank,
    sweep_errors,
)

from conftest import MEDIUM


def grid_with_velocity(points: np.ndarray, velocity: np.ndarray) -> FieldGrid:
    return FieldGrid(points, np.zeros(points.shape[0], complex), velocity, 0.1, 1.0)


class TestDirectionError:
    def test_identical(self):
        # arccos near 1 turns rounding into ~sqrt(eps), hence the tolerance
        v = np.array([1.0 + 2j, -0.5, 0.25j])
        assert direction_error(v, v) == pytest.approx(0.0, abs=1e-7)

    def test_antiparallel(self):
        v = np.array([1.0, 2.0, -1.0], dtype=complex)
        assert direction_error(v, -v) == pytest.approx(1.0)

    def test_orthogonal(self):
        a = np.array([1.0, 0.0, 0.0], dtype=complex)
        b = np.array([0.0, 1.0, 0.0], dtype=complex)
        assert direction_error(a, b) == pytest.approx(0.5)

    def test_only_real_parts_enter(self):
        a = np.array([1.0 + 5j, 0.0, 0.0])
        b = np.array([1.0 - 3j, 1e-17j, 0.0])
        assert direction_error(a, b) == pytest.approx(0.0, abs=1e-8)

    def test_zero_real_part_signals_exclusion(self):
        a = np.array([1.0, 0.0, 0.0], dtype=complex)
        b = np.array([1j, 2j, 0.0])  # purely imaginary: zero real norm
        with pytest.raises(ExcludedPoint):
            direction_error(a, b)

    def test_clamping_against_rounding(self):
        # unit vectors whose dot product exceeds 1 by rounding must not
        # produce NaN
        v = np.array([0.6, 0.8, 0.0], dtype=complex)
        w = v * (1.0 + 1e-16)
        assert direction_error(v, w) == pytest.approx(0.0, abs=1e-7)

    @given(scale=st.floats(min_value=1e-6, max_value=1e6))
    def test_positive_scaling_invariance(self, scale):
        a = np.array([0.3, -1.2, 0.5], dtype=complex)
        b = np.array([1.0, 0.4, -0.2], dtype=complex)
        base = direction_error(a, b)
        assert direction_error(a, scale * b) == pytest.approx(base, abs=1e-12)
        assert direction_error(scale * a, b) == pytest.approx(base, abs=1e-12)

    @given(scale=st.floats(min_value=1e-6, max_value=1e6))
    def test_negative_scaling_flips(self, scale):
        a = np.array([0.3, -1.2, 0.5], dtype=complex)
        b = np.array([1.0, 0.4, -0.2], dtype=complex)
        base = direction_error(a, b)
        assert direction_error(a, -scale * b) == pytest.approx(1.0 - base, abs=1e-12)


class TestMeanErrorOverDisk:
    def test_perfect_reproduction(self, rng):
        pts = np.column_stack([rng.uniform(-0.4, 0.4, 50), rng.uniform(-0.4, 0.4, 50), np.zeros(50)])
        velocity = rng.normal(size=(50, 3)) + 1j * rng.normal(size=(50, 3))
        desired = grid_with_velocity(pts, velocity)
        reproduced = grid_with_velocity(pts, velocity.copy())
        result = mean_error_over_disk(desired, reproduced, 1.0)
        assert result.mean_eta == pytest.approx(0.0, abs=1e-7)
        assert result.excluded == 0

    def test_disk_radius_filters_points(self):
        pts = np.array([[0.1, 0.0, 0.0], [0.5, 0.0, 0.0]])
        v_des = np.tile([1.0 + 0j, 0.0, 0.0], (2, 1))
        v_re = np.array([[1.0 + 0j, 0.0, 0.0], [-1.0 + 0j, 0.0, 0.0]])
        desired = grid_with_velocity(pts, v_des)
        reproduced = grid_with_velocity(pts, v_re)
        full = mean_error_over_disk(desired, reproduced, 1.0)
        inner = mean_error_over_disk(desired, reproduced, 0.2)
        assert full.mean_eta == pytest.approx(0.5)
        assert inner.mean_eta == pytest.approx(0.0, abs=1e-12)
        assert full.total == 2 and inner.total == 1

    def test_exclusion_accounting(self):
        pts = np.array([[0.1, 0.0, 0.0], [0.2, 0.0, 0.0], [0.3, 0.0, 0.0]])
        v_des = np.tile([1.0 + 0j, 0.0, 0.0], (3, 1))
        v_re = v_des.copy()
        v_re[1] = [1e-30j, 0.0, 0.0]  # effectively zero real part
        desired = grid_with_velocity(pts, v_des)
        reproduced = grid_with_velocity(pts, v_re)
        result = mean_error_over_disk(desired, reproduced, 1.0)
        assert result.excluded == 1
        assert result.included == 2
        assert result.total == 3
        assert 0.0 <= result.mean_eta <= 1.0

    def test_mismatched_grids_rejected(self):
        a = grid_with_velocity(np.zeros((2, 3)), np.ones((2, 3), complex))
        b = grid_with_velocity(np.ones((2, 3)), np.ones((2, 3), complex))
        with pytest.raises(ShapeError):
            mean_error_over_disk(a, b, 1.0)

    def test_empty_disk(self):
        pts = np.array([[0.5, 0.0, 0.0]])
        grid = grid_with_velocity(pts, np.ones((1, 3), complex))
        with pytest.raises(EmptyDiskError):
            mean_error_over_disk(grid, grid, 0.1)


class TestConditionNumber:
    def test_orthonormal_columns(self):
        q, _ = np.linalg.qr(np.random.default_rng(3).normal(size=(10, 4)))
        assert condition_number(q) == pytest.approx(1.0, rel=1e-12)

    def test_zero_matrix(self):
        with pytest.raises(UndefinedConditioningError):
            condition_number(np.zeros((4, 4)))

    def test_duplicate_column_rank_deficient(self):
        matrix = np.column_stack([np.ones(5), np.ones(5)])
        assert numerical_rank(matrix) == 1
        # conditioning over the numerical range ignores the null direction
        assert condition_number(matrix) == pytest.approx(1.0, rel=1e-12)

    def test_known_singular_values(self):
        matrix = np.diag([4.0, 2.0, 0.5])
        assert condition_number(matrix) == pytest.approx(8.0)


class TestSweep:
    def test_small_sweep_schema_and_bounds(self):
        array = LoudspeakerArray.circle(1.21, [0.0, np.pi / 4, 3 * np.pi / 4, 5 * np.pi / 4, 7 * np.pi / 4])
        desired = SourceSpec.plane_wave(np.pi / 2, np.pi / 3)
        grid = GridSpec(1 / 30, 0.5)
        sweep = sweep_errors(
            array, desired, 4, [250.0, 750.0], MEDIUM, 0.5, grid, inner_radius=0.15
        )
        assert list(sweep.frequencies_hz) == [250.0, 750.0]
        for series in (sweep.eta_vm_outer, sweep.eta_pm_outer, sweep.eta_vm_inner, sweep.eta_pm_inner):
            assert np.all((series >= 0.0) & (series <= 1.0))
        assert np.all(sweep.cond_h >= 1.0) and np.all(sweep.cond_g >= 1.0)
        assert sweep.excluded.shape == (2, 4)

    def test_threads_match_serial(self):
        array = LoudspeakerArray.circle(1.21, [0.0, np.pi / 2, np.pi])
        desired = SourceSpec.plane_wave(np.pi / 2, 0.9)
        grid = GridSpec(1 / 20, 0.5)
        serial = sweep_errors(array, desired, 4, [300.0, 600.0, 900.0], MEDIUM, 0.5, grid)
        threaded = sweep_errors(
            array, desired, 4, [300.0, 600.0, 900.0], MEDIUM, 0.5, grid, threads=3
        )
        np.testing.assert_array_equal(serial.eta_vm_outer, threaded.eta_vm_outer)
        np.testing.assert_array_equal(serial.cond_h, threaded.cond_h)

    def test_csv_schema(self, tmp_path):
        array = LoudspeakerArray.circle(1.21, [0.0, np.pi])
        desired = SourceSpec.plane_wave(np.pi / 2, 0.0)
        grid = GridSpec(1 / 20, 0.5)
        sweep = sweep_errors(array, desired, 4, [400.0], MEDIUM, 0.5, grid)
        path = tmp_path / "sweep.csv"
        sweep.write_csv(path, "velfield test kind=sweep")
        lines = path.read_text().splitlines()
        assert lines[0].startswith("# velfield test")
        assert lines[1] == (
            "frequency_hz,cond_H,cond_G,eta_vm_r050,eta_pm_r050,"
            "eta_vm_r015,eta_pm_r015,excluded_counts"
        )
        row = lines[2].split(",")
        assert float(row[0]) == 400.0
        assert len(row[7].split(";")) == 4

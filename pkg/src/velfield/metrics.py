"""Reproduction quality metrics: the direction-error metric, its disk
averages, and system condition numbers across a frequency sweep.

The direction error of a reproduced velocity against the desired one is
eta = arccos(DOT)/pi with DOT the dot product of the unit real parts, so
eta = 0 for aligned, 1/2 for orthogonal and 1 for anti-parallel vectors.
Only real parts enter; points where either real part vanishes carry no
direction and are excluded from averages.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import (
    EmptyDiskError,
    ExcludedPoint,
    ShapeError,
    UndefinedConditioningError,
)
from .field_eval import FieldGrid, GridSpec, sample_plane_exact
from .operators import MediumConstants
from .reproduction import build_reproduction_system, reproduce_field
from .sources import LoudspeakerArray, SourceSpec

__all__ = [
    "direction_error",
    "DiskError",
    "mean_error_over_disk",
    "condition_number",
    "numerical_rank",
    "ErrorSweep",
    "sweep_errors",
    "SWEEP_CSV_COLUMNS",
]

# relative real-velocity norm below which a point has no usable direction
EXCLUSION_RTOL = 1e-12

SWEEP_CSV_COLUMNS = [
    "frequency_hz",
    "cond_H",
    "cond_G",
    "eta_vm_r050",
    "eta_pm_r050",
    "eta_vm_r015",
    "eta_pm_r015",
    "excluded_counts",
]


def direction_error(v_desired: np.ndarray, v_reproduced: np.ndarray) -> float:
    """Direction error between two velocity vectors, in [0, 1].

    Raises
    ------
    ExcludedPoint
        If either vector's real part has zero norm (no direction defined).
    """
    a = np.asarray(v_desired).real.astype(float)
    b = np.asarray(v_reproduced).real.astype(float)
    norm_a = np.linalg.norm(a)
    norm_b = np.linalg.norm(b)
    if norm_a == 0.0 or norm_b == 0.0:
        raise ExcludedPoint("real velocity has zero norm; direction undefined")
    # products can exceed 1 by ~1e-16; arccos would return nan without the clamp
    dot = float(np.clip(np.dot(a / norm_a, b / norm_b), -1.0, 1.0))
    return float(np.arccos(dot) / np.pi)


@dataclass(frozen=True)
class DiskError:
    """Mean direction error over a disk plus exclusion accounting."""

    mean_eta: float
    included: int
    excluded: int

    @property
    def total(self) -> int:
        return self.included + self.excluded


def mean_error_over_disk(
    desired: FieldGrid, reproduced: FieldGrid, disk_radius: float
) -> DiskError:
    """Average the direction error over grid points inside a disk.

    Both grids must sample identical points. Points where either field's
    real velocity norm falls below EXCLUSION_RTOL times the disk RMS norm
    are excluded and counted instead of producing NaNs.
    """
    if desired.points.shape != reproduced.points.shape or not np.allclose(
        desired.points, reproduced.points
    ):
        raise ShapeError("desired and reproduced grids must share sample points")
    inside = desired.radii() <= disk_radius + 1e-12
    if not np.any(inside):
        raise EmptyDiskError(f"no grid points within disk radius {disk_radius}")
    a = desired.velocity.real[inside]
    b = reproduced.velocity.real[inside]
    norm_a = np.linalg.norm(a, axis=1)
    norm_b = np.linalg.norm(b, axis=1)
    floor_a = EXCLUSION_RTOL * np.sqrt(np.mean(norm_a**2))
    floor_b = EXCLUSION_RTOL * np.sqrt(np.mean(norm_b**2))
    usable = (norm_a > floor_a) & (norm_b > floor_b)
    excluded = int(np.count_nonzero(~usable))
    if not np.any(usable):
        raise EmptyDiskError("every point in the disk has zero real velocity")
    dots = np.sum(a[usable] * b[usable], axis=1) / (norm_a[usable] * norm_b[usable])
    eta = np.arccos(np.clip(dots, -1.0, 1.0)) / np.pi
    return DiskError(float(np.mean(eta)), int(np.count_nonzero(usable)), excluded)


def numerical_rank(matrix: np.ndarray, rtol: float | None = None) -> int:
    """Rank by counting singular values above rtol * sigma_max."""
    s = np.linalg.svd(np.asarray(matrix), compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    if rtol is None:
        rtol = max(matrix.shape) * np.finfo(float).eps
    return int(np.count_nonzero(s > rtol * s[0]))


def condition_number(matrix: np.ndarray, rtol: float | None = None) -> float:
    """sigma_max / sigma_min over the numerically nonzero singular values.

    A rank-deficient matrix is conditioned on its numerical range (singular
    values at or below the cutoff are ignored); use :func:`numerical_rank`
    to detect the deficiency itself. An all-zero matrix has no defined
    conditioning and raises.
    """
    matrix = np.asarray(matrix)
    s = np.linalg.svd(matrix, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        raise UndefinedConditioningError("condition number of a zero matrix is undefined")
    if rtol is None:
        rtol = max(matrix.shape) * np.finfo(float).eps
    kept = s[s > rtol * s[0]]
    return float(s[0] / kept[-1])


@dataclass
class ErrorSweep:
    """Per-frequency condition numbers and disk-averaged direction errors."""

    frequencies_hz: np.ndarray
    cond_h: np.ndarray
    cond_g: np.ndarray
    eta_vm_outer: np.ndarray
    eta_pm_outer: np.ndarray
    eta_vm_inner: np.ndarray
    eta_pm_inner: np.ndarray
    excluded: np.ndarray  # (F, 4) ints: vm outer, pm outer, vm inner, pm inner
    outer_radius: float
    inner_radius: float

    def write_csv(self, path: str | Path, metadata: str | None = None) -> None:
        path = Path(path)
        with path.open("w", newline="") as fh:
            if metadata is not None:
                fh.write(f"# {metadata}\n")
            writer = csv.writer(fh)
            writer.writerow(SWEEP_CSV_COLUMNS)
            for i, f in enumerate(self.frequencies_hz):
                counts = ";".join(str(int(c)) for c in self.excluded[i])
                writer.writerow(
                    [
                        repr(float(f)),
                        repr(float(self.cond_h[i])),
                        repr(float(self.cond_g[i])),
                        repr(float(self.eta_vm_outer[i])),
                        repr(float(self.eta_pm_outer[i])),
                        repr(float(self.eta_vm_inner[i])),
                        repr(float(self.eta_pm_inner[i])),
                        counts,
                    ]
                )


def _sweep_one_frequency(args) -> tuple:
    (array, desired, max_degree, f, medium, region_radius, grid, inner_radius, rtol) = args
    system = build_reproduction_system(
        array, desired, max_degree, f, medium, region_radius
    )
    w_vm = system.solve_velocity_matching(rtol)
    w_pm = system.solve_pressure_matching(rtol)
    k = 2.0 * np.pi * f / medium.sound_speed
    desired_grid = sample_plane_exact([desired], k, grid, medium)
    vm_grid = reproduce_field(array, w_vm, k, grid, medium)
    pm_grid = reproduce_field(array, w_pm, k, grid, medium)
    outer = grid.mask_radius
    vm_outer = mean_error_over_disk(desired_grid, vm_grid, outer)
    pm_outer = mean_error_over_disk(desired_grid, pm_grid, outer)
    vm_inner = mean_error_over_disk(desired_grid, vm_grid, inner_radius)
    pm_inner = mean_error_over_disk(desired_grid, pm_grid, inner_radius)
    return (
        condition_number(system.h),
        condition_number(system.g),
        vm_outer.mean_eta,
        pm_outer.mean_eta,
        vm_inner.mean_eta,
        pm_inner.mean_eta,
        (vm_outer.excluded, pm_outer.excluded, vm_inner.excluded, pm_inner.excluded),
    )


def sweep_errors(
    array: LoudspeakerArray,
    desired: SourceSpec,
    max_degree: int,
    frequencies_hz,
    medium: MediumConstants = MediumConstants(),
    region_radius: float | None = None,
    grid: GridSpec | None = None,
    inner_radius: float = 0.15,
    rtol: float | None = None,
    threads: int = 1,
) -> ErrorSweep:
    """Run the reproduction experiment across a frequency sweep.

    Desired and reproduced fields are evaluated in closed form on the grid;
    weights are solved from the truncated systems at each frequency
    independently. Frequencies are independent work units, so ``threads``
    may fan them out; results keep the input ordering either way.
    """
    frequencies = np.asarray(list(frequencies_hz), dtype=float)
    if grid is None:
        grid = GridSpec(spacing=1.0 / 60.0, mask_radius=0.5)
    jobs = [
        (array, desired, max_degree, float(f), medium, region_radius, grid, inner_radius, rtol)
        for f in frequencies
    ]
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(_sweep_one_frequency, jobs))
    else:
        rows = [_sweep_one_frequency(job) for job in jobs]
    return ErrorSweep(
        frequencies_hz=frequencies,
        cond_h=np.array([r[0] for r in rows]),
        cond_g=np.array([r[1] for r in rows]),
        eta_vm_outer=np.array([r[2] for r in rows]),
        eta_pm_outer=np.array([r[3] for r in rows]),
        eta_vm_inner=np.array([r[4] for r in rows]),
        eta_pm_inner=np.array([r[5] for r in rows]),
        excluded=np.array([r[6] for r in rows], dtype=int),
        outer_radius=grid.mask_radius,
        inner_radius=inner_radius,
    )

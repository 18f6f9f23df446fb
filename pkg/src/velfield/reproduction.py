"""Velocity-matching and pressure-matching loudspeaker systems.

Per wavenumber, the velocity method stacks the three coefficient blocks of
every loudspeaker into H (3 L^2 x S) and matches the stacked desired blocks;
the pressure method matches the raw pressure coefficients through
G ((L+1)^2 x S). Both solve minimum-norm least squares through the same
SVD-based pseudoinverse; only the matrix assembly differs.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import ShapeError
from .field_eval import FieldGrid, GridSpec, sample_plane_exact
from .operators import MediumConstants, velocity_operators
from .shbasis import num_coeffs
from .sources import LoudspeakerArray, SourceSpec

__all__ = [
    "Weights",
    "ReproductionSystem",
    "build_h",
    "build_g",
    "stacked_velocity_coeffs",
    "build_reproduction_system",
    "solve_weights",
    "default_pinv_tolerance",
    "reproduce_field",
    "write_weights_csv",
]


@dataclass(frozen=True)
class Weights:
    """Solved loudspeaker driving weights at one frequency."""

    values: np.ndarray  # (S,) complex
    frequency_hz: float

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=complex))
        if not np.all(np.isfinite(self.values)):
            raise ValueError("weights must be finite")


def stacked_velocity_coeffs(alpha, operators) -> np.ndarray:
    """Concatenate the x/y/z velocity coefficient blocks of one field."""
    op_x, op_y, op_z = operators
    return np.concatenate(
        [op_x.matrix @ alpha.coeffs, op_y.matrix @ alpha.coeffs, op_z.matrix @ alpha.coeffs]
    )


def build_h(
    array: LoudspeakerArray,
    max_degree: int,
    k: float,
    medium: MediumConstants = MediumConstants(),
    region_radius: float | None = None,
) -> np.ndarray:
    """Velocity-matching system matrix, shape (3 L^2, S).

    Column s holds the stacked x/y/z velocity coefficients radiated by
    unit output of loudspeaker s.
    """
    if region_radius is not None:
        array.require_outside(region_radius)
    ops = velocity_operators(max_degree, medium)
    cols = [
        stacked_velocity_coeffs(src.coefficients(k, max_degree), ops)
        for src in array.sources()
    ]
    return np.stack(cols, axis=1)


def build_g(
    array: LoudspeakerArray,
    max_degree: int,
    k: float,
    region_radius: float | None = None,
) -> np.ndarray:
    """Pressure-matching system matrix, shape ((L+1)^2, S)."""
    if region_radius is not None:
        array.require_outside(region_radius)
    cols = [src.coefficients(k, max_degree).coeffs for src in array.sources()]
    return np.stack(cols, axis=1)


def default_pinv_tolerance(matrix: np.ndarray) -> float:
    """Relative singular-value cutoff: max(rows, cols) * machine epsilon.

    Mirrors the default of the standard pseudoinverse routines the paper's
    experiment relied on; callers may override it per scenario.
    """
    return max(matrix.shape) * np.finfo(float).eps


def solve_weights(
    matrix: np.ndarray,
    desired: np.ndarray,
    frequency_hz: float,
    rtol: float | None = None,
) -> Weights:
    """Minimum-norm least-squares weights via the SVD pseudoinverse.

    Singular values below ``rtol * sigma_max`` are treated as zero; an
    all-zero matrix yields zero weights rather than an error.
    """
    matrix = np.asarray(matrix, dtype=complex)
    desired = np.asarray(desired, dtype=complex)
    if matrix.ndim != 2 or desired.shape != (matrix.shape[0],):
        raise ShapeError(
            f"desired vector of length {desired.shape} does not match matrix rows {matrix.shape}"
        )
    if rtol is None:
        rtol = default_pinv_tolerance(matrix)
    u, s, vh = np.linalg.svd(matrix, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return Weights(np.zeros(matrix.shape[1], dtype=complex), frequency_hz)
    inv = np.where(s > rtol * s[0], 1.0 / np.where(s > 0, s, 1.0), 0.0)
    w = vh.conj().T @ (inv * (u.conj().T @ desired))
    return Weights(w, frequency_hz)


@dataclass(frozen=True)
class ReproductionSystem:
    """Assembled matching systems and desired targets at one frequency."""

    h: np.ndarray  # (3 L^2, S)
    g: np.ndarray  # ((L+1)^2, S)
    zeta_desired: np.ndarray  # (3 L^2,)
    alpha_desired: np.ndarray  # ((L+1)^2,)
    frequency_hz: float
    max_degree: int

    def __post_init__(self):
        l2 = self.max_degree**2
        if self.h.shape[0] != 3 * l2:
            raise ShapeError(f"H must have {3 * l2} rows, got {self.h.shape[0]}")
        if self.g.shape[0] != num_coeffs(self.max_degree):
            raise ShapeError(
                f"G must have {num_coeffs(self.max_degree)} rows, got {self.g.shape[0]}"
            )
        if self.zeta_desired.shape != (self.h.shape[0],):
            raise ShapeError("desired velocity stack does not match H")
        if self.alpha_desired.shape != (self.g.shape[0],):
            raise ShapeError("desired pressure vector does not match G")

    def solve_velocity_matching(self, rtol: float | None = None) -> Weights:
        return solve_weights(self.h, self.zeta_desired, self.frequency_hz, rtol)

    def solve_pressure_matching(self, rtol: float | None = None) -> Weights:
        return solve_weights(self.g, self.alpha_desired, self.frequency_hz, rtol)


def build_reproduction_system(
    array: LoudspeakerArray,
    desired: SourceSpec,
    max_degree: int,
    frequency_hz: float,
    medium: MediumConstants = MediumConstants(),
    region_radius: float | None = None,
) -> ReproductionSystem:
    """Assemble H, G and the desired targets for one frequency."""
    k = 2.0 * np.pi * frequency_hz / medium.sound_speed
    alpha_des = desired.coefficients(k, max_degree)
    ops = velocity_operators(max_degree, medium)
    return ReproductionSystem(
        h=build_h(array, max_degree, k, medium, region_radius),
        g=build_g(array, max_degree, k, region_radius),
        zeta_desired=stacked_velocity_coeffs(alpha_des, ops),
        alpha_desired=alpha_des.coeffs,
        frequency_hz=frequency_hz,
        max_degree=max_degree,
    )


def reproduce_field(
    array: LoudspeakerArray,
    weights: Weights,
    k: float,
    grid: GridSpec,
    medium: MediumConstants = MediumConstants(),
) -> FieldGrid:
    """Synthesize the field the weighted loudspeakers physically radiate."""
    if len(weights.values) != array.count:
        raise ShapeError(
            f"{len(weights.values)} weights for {array.count} loudspeakers"
        )
    return sample_plane_exact(array.sources(weights.values), k, grid, medium)


def write_weights_csv(path: str | Path, weights_list: list[Weights], metadata: str | None = None) -> None:
    """Weights export: one row per (frequency, speaker)."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        if metadata is not None:
            fh.write(f"# {metadata}\n")
        fh.write("frequency_hz,speaker_index,re_w,im_w\n")
        for weights in weights_list:
            for s, w in enumerate(weights.values):
                fh.write(
                    f"{float(weights.frequency_hz)!r},{s},{float(w.real)!r},{float(w.imag)!r}\n"
                )

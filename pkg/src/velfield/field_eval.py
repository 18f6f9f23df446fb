"""Pressure and velocity evaluation in the listening region.

Two routes to the velocity coexist deliberately: the coefficient route
(degree-(L-1) series with the operator outputs) and an independent central
finite-difference of the pressure series. Their agreement is the decisive
correctness check for the operator construction.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import DegreeTooSmallError, DomainError, ShapeError
from .operators import MediumConstants
from .shbasis import (
    SHVector,
    SphericalPoint,
    cartesian_to_spherical,
    degree_order_arrays,
    sph_bessel_j,
    sph_harmonic,
)
from .sources import SourceSpec

__all__ = [
    "GridSpec",
    "FieldGrid",
    "regular_basis_matrix",
    "pressure_at",
    "pressure_at_points",
    "velocity_at_via_zeta",
    "velocity_at_points_via_zeta",
    "velocity_at_origin_from_beta",
    "velocity_at_finite_difference",
    "sample_plane",
    "sample_plane_exact",
    "FIELD_CSV_COLUMNS",
]

DEFAULT_FD_STEP = 1e-4  # meters; balances truncation vs rounding at audio k

FIELD_CSV_COLUMNS = [
    "x", "y", "z",
    "Re(p)", "Im(p)",
    "Re(Vx)", "Im(Vx)",
    "Re(Vy)", "Im(Vy)",
    "Re(Vz)", "Im(Vz)",
]


def regular_basis_matrix(max_degree: int, k: float, points: np.ndarray) -> np.ndarray:
    """Matrix of j_n(k r) Y_n^m(theta, phi) basis values.

    Parameters
    ----------
    max_degree : int
        Highest degree N of the expansion.
    k : float
        Wavenumber in rad/m.
    points : ndarray, shape (N_pts, 3)
        Cartesian evaluation points.

    Returns
    -------
    ndarray of complex, shape (N_pts, (N+1)^2)
        Row p, column (n, m) holds j_n(k r_p) Y_n^m(theta_p, phi_p), so a
        coefficient vector dotted from the right evaluates the series.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    r, theta, phi = cartesian_to_spherical(points[:, 0], points[:, 1], points[:, 2])
    n, m = degree_order_arrays(max_degree)
    radial = sph_bessel_j(n[None, :], k * r[:, None])
    harm = sph_harmonic(n[None, :], m[None, :], theta[:, None], phi[:, None])
    return radial * harm


def _check_radius(r: np.ndarray, alpha: SHVector, max_radius: float | None) -> None:
    # the interior expansion diverges at the source sphere: strictly inside
    if alpha.valid_radius is not None and np.any(r >= alpha.valid_radius):
        raise DomainError(
            f"evaluation point at r={float(np.max(r)):.4g} m is at or beyond "
            f"the source radius (valid for r < {alpha.valid_radius:.4g} m)"
        )
    # the listening region is a closed ball: its boundary is admissible
    if max_radius is not None and np.any(r > max_radius * (1.0 + 1e-12)):
        raise DomainError(
            f"evaluation point at r={float(np.max(r)):.4g} m is outside the "
            f"listening region (radius {max_radius:.4g} m)"
        )


def pressure_at_points(
    alpha: SHVector, k: float, points: np.ndarray, max_radius: float | None = None
) -> np.ndarray:
    """Truncated pressure series at Cartesian ``points`` (shape (N, 3))."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    r = np.linalg.norm(points, axis=1)
    _check_radius(r, alpha, max_radius)
    return regular_basis_matrix(alpha.max_degree, k, points) @ alpha.coeffs


def pressure_at(
    alpha: SHVector, k: float, point: SphericalPoint, max_radius: float | None = None
) -> complex:
    """Truncated pressure series at one spherical point."""
    return complex(pressure_at_points(alpha, k, point.to_cartesian()[None, :], max_radius)[0])


def velocity_at_points_via_zeta(
    zeta_x: SHVector,
    zeta_y: SHVector,
    zeta_z: SHVector,
    k: float,
    points: np.ndarray,
    region_radius: float | None = None,
) -> np.ndarray:
    """Velocity via the coefficient route at Cartesian ``points``.

    The three component series share one set of basis values. Returns shape
    (N, 3) complex.
    """
    if not (zeta_x.max_degree == zeta_y.max_degree == zeta_z.max_degree):
        raise ShapeError("velocity coefficient vectors must share a max degree")
    points = np.atleast_2d(np.asarray(points, dtype=float))
    r = np.linalg.norm(points, axis=1)
    _check_radius(r, zeta_x, region_radius)
    basis = regular_basis_matrix(zeta_x.max_degree, k, points)
    return np.stack(
        [basis @ zeta_x.coeffs, basis @ zeta_y.coeffs, basis @ zeta_z.coeffs], axis=-1
    )


def velocity_at_via_zeta(
    zeta_x: SHVector,
    zeta_y: SHVector,
    zeta_z: SHVector,
    k: float,
    point: SphericalPoint,
    region_radius: float | None = None,
) -> np.ndarray:
    """Velocity via the coefficient route at one spherical point (shape (3,))."""
    return velocity_at_points_via_zeta(
        zeta_x, zeta_y, zeta_z, k, point.to_cartesian()[None, :], region_radius
    )[0]


def velocity_at_origin_from_beta(
    beta: SHVector, medium: MediumConstants = MediumConstants()
) -> np.ndarray:
    """Velocity at the expansion center from local pressure coefficients.

    Only the three first-degree coefficients enter: the radial derivative of
    j_n(kr) vanishes at r = 0 for every other degree.
    """
    if beta.max_degree < 1:
        raise DegreeTooSmallError("velocity at a point needs coefficients of degree >= 1")
    b_minus = beta.get(1, -1)
    b_zero = beta.get(1, 0)
    b_plus = beta.get(1, 1)
    s8 = np.sqrt(3.0 / (8.0 * np.pi))
    s4 = np.sqrt(3.0 / (4.0 * np.pi))
    scale = 1j / (3.0 * medium.density * medium.sound_speed)
    return np.array(
        [
            scale * (s8 * b_minus - s8 * b_plus),
            scale * (-1j * s8 * b_minus - 1j * s8 * b_plus),
            scale * (s4 * b_zero),
        ],
        dtype=complex,
    )


def velocity_at_finite_difference(
    alpha: SHVector,
    k: float,
    point: SphericalPoint,
    h: float = DEFAULT_FD_STEP,
    medium: MediumConstants = MediumConstants(),
    max_radius: float | None = None,
) -> np.ndarray:
    """Independent velocity oracle: central differences of the pressure series.

    Computes (i / k rho0 c) dp/de along the three axes with step ``h``;
    second-order accurate in h. Offset points must stay inside the validity
    region.
    """
    if h <= 0:
        raise ValueError(f"step must be positive, got {h}")
    center = point.to_cartesian()
    offsets = np.zeros((6, 3))
    for axis in range(3):
        offsets[2 * axis, axis] = h
        offsets[2 * axis + 1, axis] = -h
    p = pressure_at_points(alpha, k, center[None, :] + offsets, max_radius)
    grad = (p[0::2] - p[1::2]) / (2.0 * h)
    return (1j / (k * medium.density * medium.sound_speed)) * grad


@dataclass(frozen=True)
class GridSpec:
    """Planar evaluation grid: square lattice on z = 0 clipped to a disk.

    The lattice is centered on the origin with points at integer multiples
    of ``spacing``; a point is kept when x^2 + y^2 <= mask_radius^2. A mask
    radius smaller than the spacing is treated as a degenerate request and
    yields an empty grid.
    """

    spacing: float
    mask_radius: float

    def __post_init__(self):
        if self.spacing <= 0:
            raise ValueError(f"grid spacing must be positive, got {self.spacing}")
        if self.mask_radius < 0:
            raise ValueError(f"mask radius must be non-negative, got {self.mask_radius}")

    def points(self) -> np.ndarray:
        """Cartesian sample points, shape (N, 3), iterated row-major in x then y."""
        if self.mask_radius < self.spacing:
            return np.zeros((0, 3), dtype=float)
        half = int(np.floor(self.mask_radius / self.spacing)) + 1
        ticks = np.arange(-half, half + 1) * self.spacing
        gx, gy = np.meshgrid(ticks, ticks, indexing="ij")
        keep = gx**2 + gy**2 <= self.mask_radius**2 + 1e-12
        pts = np.stack([gx[keep], gy[keep], np.zeros(int(keep.sum()))], axis=1)
        return pts


@dataclass
class FieldGrid:
    """Sampled pressure and velocity on a planar grid."""

    points: np.ndarray  # (N, 3) Cartesian
    pressure: np.ndarray  # (N,) complex
    velocity: np.ndarray  # (N, 3) complex
    spacing: float
    mask_radius: float

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        self.pressure = np.asarray(self.pressure, dtype=complex)
        self.velocity = np.asarray(self.velocity, dtype=complex)
        n = self.points.shape[0]
        if self.pressure.shape != (n,) or self.velocity.shape != (n, 3):
            raise ShapeError("pressure/velocity arrays must match the point count")

    @property
    def count(self) -> int:
        return self.points.shape[0]

    def radii(self) -> np.ndarray:
        return np.linalg.norm(self.points, axis=1)

    def write_csv(self, path: str | Path, metadata: str | None = None) -> None:
        """Write the grid as CSV; ``metadata`` becomes a leading comment line."""
        path = Path(path)
        with path.open("w", newline="") as fh:
            if metadata is not None:
                fh.write(f"# {metadata}\n")
            writer = csv.writer(fh)
            writer.writerow(FIELD_CSV_COLUMNS)
            for i in range(self.count):
                x, y, z = self.points[i]
                p = self.pressure[i]
                vx, vy, vz = self.velocity[i]
                writer.writerow(
                    [repr(float(v)) for v in (
                        x, y, z,
                        p.real, p.imag,
                        vx.real, vx.imag,
                        vy.real, vy.imag,
                        vz.real, vz.imag,
                    )]
                )


def sample_plane(
    alpha: SHVector,
    zetas: tuple[SHVector, SHVector, SHVector],
    k: float,
    grid: GridSpec,
    region_radius: float | None = None,
) -> FieldGrid:
    """Evaluate the truncated pressure and velocity series on a planar grid.

    Pressure comes from the global coefficients, velocity from the three
    operator outputs; both series are evaluated at every unmasked point.
    """
    pts = grid.points()
    if pts.shape[0] == 0:
        return FieldGrid(pts, np.zeros(0, complex), np.zeros((0, 3), complex),
                         grid.spacing, grid.mask_radius)
    pressure = pressure_at_points(alpha, k, pts, region_radius)
    velocity = velocity_at_points_via_zeta(*zetas, k, pts, region_radius)
    return FieldGrid(pts, pressure, velocity, grid.spacing, grid.mask_radius)


def sample_plane_exact(
    sources: list[SourceSpec],
    k: float,
    grid: GridSpec,
    medium: MediumConstants = MediumConstants(),
) -> FieldGrid:
    """Superpose closed-form source fields on a planar grid.

    Used for desired references and for synthesizing what a weighted
    loudspeaker set physically radiates; no series truncation is involved.
    """
    pts = grid.points()
    pressure = np.zeros(pts.shape[0], dtype=complex)
    velocity = np.zeros((pts.shape[0], 3), dtype=complex)
    for src in sources:
        pressure += src.exact_pressure(k, pts)
        velocity += src.exact_velocity(k, pts, medium)
    return FieldGrid(pts, pressure, velocity, grid.spacing, grid.mask_radius)

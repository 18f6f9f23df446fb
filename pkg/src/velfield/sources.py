"""Analytic spherical-harmonic coefficients for plane waves and point
sources, loudspeaker-array geometry, and the matching closed-form fields.

Coefficient conventions (e^{+i omega t} time dependence):

* plane wave arriving from (theta_pw, phi_pw):
  alpha_l^q = 4 pi i^l conj(Y_l^q(theta_pw, phi_pw)), independent of k;
  reconstructed pressure is exp(+i k u . r) with u the unit vector of the
  incidence direction.
* point source at (r_ps, theta_ps, phi_ps):
  alpha_l^q = -i k h_l^(2)(k r_ps) conj(Y_l^q(theta_ps, phi_ps)); the
  reconstructed pressure equals the free-field Green's function
  e^{-i k R}/(4 pi R) for field points with r < r_ps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, SingularSourceError
from .operators import MediumConstants
from .shbasis import (
    SHVector,
    SphericalPoint,
    degree_order_arrays,
    sph_harmonic,
    sph_hankel2,
    spherical_to_cartesian,
)

__all__ = [
    "SourceSpec",
    "LoudspeakerArray",
    "plane_wave_coeffs",
    "point_source_coeffs",
]


def plane_wave_coeffs(direction: tuple[float, float], max_degree: int) -> SHVector:
    """Pressure coefficients of a unit plane wave, valid for all wavenumbers.

    Parameters
    ----------
    direction : (theta, phi)
        Incidence direction in radians (where the wave arrives from).
    max_degree : int
        Truncation degree L of the returned vector.
    """
    theta, phi = direction
    n, m = degree_order_arrays(max_degree)
    coeffs = 4.0 * np.pi * (1j) ** n * np.conj(sph_harmonic(n, m, theta, phi))
    return SHVector(max_degree, coeffs)


def point_source_coeffs(position: SphericalPoint, k: float, max_degree: int) -> SHVector:
    """Pressure coefficients of a unit point source outside the region.

    The returned vector carries ``valid_radius = r_ps``: the interior
    expansion diverges from the true field at and beyond the source radius.
    """
    if position.r <= 0:
        raise SingularSourceError("point source must have a strictly positive radius")
    if k <= 0:
        raise ValueError(f"wavenumber must be positive, got {k}")
    n, m = degree_order_arrays(max_degree)
    radial = sph_hankel2(np.arange(max_degree + 1), k * position.r)
    coeffs = (
        -1j * k * radial[n] * np.conj(sph_harmonic(n, m, position.theta, position.phi))
    )
    return SHVector(max_degree, coeffs, valid_radius=position.r)


@dataclass(frozen=True)
class SourceSpec:
    """A plane wave (direction) or point source (spherical position)."""

    kind: str  # "plane_wave" | "point_source"
    direction: tuple[float, float] | None = None
    position: SphericalPoint | None = None
    gain: complex = 1.0 + 0.0j

    def __post_init__(self):
        if self.kind == "plane_wave":
            if self.direction is None:
                raise ValueError("plane wave needs an incidence direction")
        elif self.kind == "point_source":
            if self.position is None:
                raise ValueError("point source needs a position")
            if self.position.r <= 0:
                raise SingularSourceError("point source must have a strictly positive radius")
        else:
            raise ValueError(f"unknown source kind {self.kind!r}")

    @classmethod
    def plane_wave(cls, theta: float, phi: float, gain: complex = 1.0) -> "SourceSpec":
        return cls("plane_wave", direction=(theta, phi), gain=complex(gain))

    @classmethod
    def point_source(
        cls, r: float, theta: float, phi: float, gain: complex = 1.0
    ) -> "SourceSpec":
        return cls("point_source", position=SphericalPoint(r, theta, phi), gain=complex(gain))

    def coefficients(self, k: float, max_degree: int) -> SHVector:
        """Pressure coefficients of this source, including its gain."""
        if self.kind == "plane_wave":
            base = plane_wave_coeffs(self.direction, max_degree)
        else:
            base = point_source_coeffs(self.position, k, max_degree)
        return SHVector(base.max_degree, self.gain * base.coeffs, base.valid_radius)

    def exact_pressure(self, k: float, points: np.ndarray) -> np.ndarray:
        """Closed-form pressure at Cartesian ``points`` (shape (N, 3))."""
        points = np.asarray(points, dtype=float)
        if self.kind == "plane_wave":
            u = _unit_vector(*self.direction)
            return self.gain * np.exp(1j * k * points @ u)
        src = self.position.to_cartesian()
        diff = points - src[None, :]
        dist = np.linalg.norm(diff, axis=-1)
        if np.any(dist == 0):
            raise DomainError("field point coincides with the point source")
        return self.gain * np.exp(-1j * k * dist) / (4.0 * np.pi * dist)

    def exact_velocity(
        self, k: float, points: np.ndarray, medium: MediumConstants = MediumConstants()
    ) -> np.ndarray:
        """Closed-form particle velocity at Cartesian ``points`` (shape (N, 3)).

        Defined as (i / k rho0 c) grad p, consistent with the coefficient
        route; for the plane wave this is -u/(rho0 c) times the pressure.
        """
        points = np.asarray(points, dtype=float)
        rho_c = medium.density * medium.sound_speed
        if self.kind == "plane_wave":
            u = _unit_vector(*self.direction)
            p = self.exact_pressure(k, points)
            return -(1.0 / rho_c) * p[..., None] * u[None, :]
        src = self.position.to_cartesian()
        diff = points - src[None, :]
        dist = np.linalg.norm(diff, axis=-1)
        if np.any(dist == 0):
            raise DomainError("field point coincides with the point source")
        p = self.gain * np.exp(-1j * k * dist) / (4.0 * np.pi * dist)
        radial = (1.0 / rho_c) * (1.0 - 1j / (k * dist)) * p
        return radial[..., None] * (diff / dist[..., None])


@dataclass(frozen=True)
class LoudspeakerArray:
    """Loudspeaker positions, modeled as point sources with optional gains."""

    positions: tuple[SphericalPoint, ...]
    gains: tuple[complex, ...] | None = None

    def __post_init__(self):
        if len(self.positions) < 1:
            raise ValueError("array needs at least one loudspeaker")
        if self.gains is None:
            object.__setattr__(self, "gains", (1.0 + 0.0j,) * len(self.positions))
        elif len(self.gains) != len(self.positions):
            raise ValueError("one gain per loudspeaker required")

    @classmethod
    def circle(
        cls, radius: float, azimuths, theta: float = np.pi / 2
    ) -> "LoudspeakerArray":
        """Loudspeakers on a circle of ``radius`` at colatitude ``theta``."""
        return cls(tuple(SphericalPoint(radius, theta, float(az)) for az in azimuths))

    @property
    def count(self) -> int:
        return len(self.positions)

    def require_outside(self, region_radius: float) -> None:
        """Raise if any loudspeaker sits inside the listening region."""
        for i, pos in enumerate(self.positions):
            if pos.r <= region_radius:
                raise DomainError(
                    f"loudspeaker {i} at radius {pos.r} m lies inside the "
                    f"listening region (radius {region_radius} m)"
                )

    def sources(self, weights=None) -> list[SourceSpec]:
        """Per-speaker point sources, optionally scaled by solved weights."""
        if weights is None:
            weights = np.ones(self.count, dtype=complex)
        if len(weights) != self.count:
            raise ValueError("one weight per loudspeaker required")
        return [
            SourceSpec.point_source(p.r, p.theta, p.phi, gain=g * w)
            for p, g, w in zip(self.positions, self.gains, weights)
        ]


def _unit_vector(theta: float, phi: float) -> np.ndarray:
    x, y, z = spherical_to_cartesian(1.0, theta, phi)
    return np.array([x, y, z], dtype=float)

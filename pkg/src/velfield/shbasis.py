"""Spherical-harmonic basis functions, spherical Bessel/Hankel functions and
coefficient indexing.

Conventions used throughout the package:

* Complex orthonormal spherical harmonics with the Condon-Shortley phase,
  so Y_0^0 = 1/sqrt(4 pi), Y_1^0(0, 0) = sqrt(3/4pi) and
  Y_1^{+-1}(pi/2, 0) = -+ sqrt(3/8pi).
* Coefficient vectors are flat complex arrays ordered by the linear index
  n^2 + n + m (ACN ordering), length (N+1)^2 for maximum degree N.
* Time convention e^{+i omega t}; the spherical Hankel function of the
  second kind h_n^(2) = j_n - i y_n is the outgoing radial function.
* Colatitude theta in [0, pi], azimuth phi in [-pi, pi]. Out-of-range
  angles are wrapped onto the canonical ranges, not rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import NamedTuple

import numpy as np
import scipy.special as _sp

from .exceptions import InvalidOrderError, SingularArgumentError

__all__ = [
    "DegreeOrder",
    "SHVector",
    "SphericalPoint",
    "sh_index",
    "sh_degree_order",
    "num_coeffs",
    "max_degree_for",
    "degree_order_arrays",
    "wrap_spherical_angles",
    "spherical_to_cartesian",
    "cartesian_to_spherical",
    "sph_harmonic",
    "sph_bessel_j",
    "sph_bessel_y",
    "sph_bessel_j_derivative",
    "sph_bessel_y_derivative",
    "sph_bessel_j_radial_derivative_at_zero",
    "sph_hankel2",
]


class DegreeOrder(NamedTuple):
    """A (degree, order) pair with |order| <= degree."""

    degree: int
    order: int


def sh_index(n: int, m: int) -> int:
    """Linear index of the (degree n, order m) coefficient.

    The map is n^2 + n + m, a bijection between {(n, m): 0 <= n, |m| <= n}
    and the non-negative integers.
    """
    if abs(m) > n:
        raise InvalidOrderError(f"order |m|={abs(m)} exceeds degree n={n}")
    return n * n + n + m


def sh_degree_order(index: int) -> DegreeOrder:
    """Inverse of :func:`sh_index`."""
    if index < 0:
        raise InvalidOrderError(f"negative coefficient index {index}")
    n = isqrt(index)
    m = index - n * n - n
    return DegreeOrder(n, m)


def num_coeffs(max_degree: int) -> int:
    """Number of coefficients up to and including ``max_degree``."""
    return (max_degree + 1) ** 2


def max_degree_for(n_coeffs: int) -> int:
    """Maximum degree of a coefficient vector of length ``n_coeffs``."""
    n = isqrt(max(n_coeffs, 0)) - 1
    if n < 0 or num_coeffs(n) != n_coeffs:
        raise InvalidOrderError(f"{n_coeffs} is not a perfect square")
    return n


def degree_order_arrays(max_degree: int) -> tuple[np.ndarray, np.ndarray]:
    """Degree and order arrays aligned with the linear index ordering."""
    idx = np.arange(num_coeffs(max_degree))
    n = np.floor(np.sqrt(idx)).astype(int)
    m = idx - n * n - n
    return n, m


def wrap_spherical_angles(theta, phi):
    """Wrap arbitrary real angles onto colatitude [0, pi], azimuth [-pi, pi].

    A colatitude beyond pi reflects through the pole, which shifts the
    azimuth by pi; the same point on the sphere is always returned.
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    theta_w = np.mod(theta, 2.0 * np.pi)
    over = theta_w > np.pi
    theta_w = np.where(over, 2.0 * np.pi - theta_w, theta_w)
    phi_w = np.where(over, phi + np.pi, phi)
    phi_w = np.mod(phi_w + np.pi, 2.0 * np.pi) - np.pi
    return theta_w, phi_w


def spherical_to_cartesian(r, theta, phi):
    """(r, theta, phi) -> (x, y, z), vectorized."""
    r = np.asarray(r, dtype=float)
    st = np.sin(theta)
    return r * st * np.cos(phi), r * st * np.sin(phi), r * np.cos(theta)


def cartesian_to_spherical(x, y, z):
    """(x, y, z) -> (r, theta, phi) with theta = 0 at the origin."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    r = np.sqrt(x * x + y * y + z * z)
    with np.errstate(invalid="ignore", divide="ignore"):
        cos_t = np.where(r > 0, z / np.where(r > 0, r, 1.0), 1.0)
    theta = np.arccos(np.clip(cos_t, -1.0, 1.0))
    phi = np.arctan2(y, x)
    return r, theta, phi


@dataclass
class SHVector:
    """Degree-ordered complex coefficient vector.

    Parameters
    ----------
    max_degree : int
        Maximum spherical-harmonic degree N; the vector has (N+1)^2 entries.
    coeffs : ndarray of complex, shape ((N+1)^2,)
        Coefficients in linear-index order (n^2 + n + m).
    valid_radius : float or None
        Radius below which a field reconstructed from these coefficients is
        valid (set by interior point-source expansions); None means
        unbounded.
    """

    max_degree: int
    coeffs: np.ndarray
    valid_radius: float | None = None

    def __post_init__(self):
        if self.max_degree < 0:
            raise InvalidOrderError(f"negative max_degree {self.max_degree}")
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        if self.coeffs.shape != (num_coeffs(self.max_degree),):
            raise InvalidOrderError(
                f"coefficient vector of max_degree {self.max_degree} must have "
                f"length {num_coeffs(self.max_degree)}, got {self.coeffs.shape}"
            )

    @classmethod
    def zeros(cls, max_degree: int, valid_radius: float | None = None) -> "SHVector":
        return cls(max_degree, np.zeros(num_coeffs(max_degree), dtype=complex), valid_radius)

    def get(self, n: int, m: int) -> complex:
        return complex(self.coeffs[sh_index(n, m)])

    def set(self, n: int, m: int, value: complex) -> None:
        self.coeffs[sh_index(n, m)] = value

    def copy(self) -> "SHVector":
        return SHVector(self.max_degree, self.coeffs.copy(), self.valid_radius)

    def __len__(self) -> int:
        return self.coeffs.shape[0]


@dataclass
class SphericalPoint:
    """A point in spherical coordinates (meters, radians).

    Angles outside the canonical ranges are wrapped in place; the radius
    must be non-negative.
    """

    r: float
    theta: float
    phi: float

    def __post_init__(self):
        if self.r < 0:
            raise ValueError(f"negative radius {self.r}")
        theta, phi = wrap_spherical_angles(self.theta, self.phi)
        self.theta = float(theta)
        self.phi = float(phi)

    @classmethod
    def from_cartesian(cls, x: float, y: float, z: float) -> "SphericalPoint":
        r, theta, phi = cartesian_to_spherical(x, y, z)
        return cls(float(r), float(theta), float(phi))

    def to_cartesian(self) -> np.ndarray:
        x, y, z = spherical_to_cartesian(self.r, self.theta, self.phi)
        return np.array([x, y, z], dtype=float)


# scipy >= 1.15 renamed sph_harm to sph_harm_y (and swapped the argument
# order); support both so the package runs on older installs.
if hasattr(_sp, "sph_harm_y"):

    def _sph_harm(n, m, theta, phi):
        return _sp.sph_harm_y(n, m, theta, phi)

else:  # pragma: no cover - exercised only on scipy < 1.15

    def _sph_harm(n, m, theta, phi):
        return _sp.sph_harm(m, n, phi, theta)


def sph_harmonic(n, m, theta, phi):
    """Orthonormal complex spherical harmonic Y_n^m(theta, phi).

    Includes the Condon-Shortley phase. Scalar or array angles; out-of-range
    angles are wrapped onto the sphere first.

    Parameters
    ----------
    n, m : int or int arrays
        Degree and order, |m| <= n elementwise.
    theta, phi : float or float arrays
        Colatitude and azimuth in radians.

    Returns
    -------
    complex or complex ndarray
    """
    n_arr = np.asarray(n)
    m_arr = np.asarray(m)
    if np.any(np.abs(m_arr) > n_arr):
        raise InvalidOrderError("order |m| exceeds degree n")
    theta, phi = wrap_spherical_angles(theta, phi)
    return _sph_harm(n_arr, m_arr, theta, phi)


def sph_bessel_j(n, x):
    """Spherical Bessel function of the first kind j_n(x), x >= 0."""
    return _sp.spherical_jn(np.asarray(n), np.asarray(x, dtype=float))


def sph_bessel_y(n, x):
    """Spherical Bessel function of the second kind y_n(x), x > 0."""
    return _sp.spherical_yn(np.asarray(n), np.asarray(x, dtype=float))


def sph_bessel_j_derivative(n, x):
    """d/dx j_n(x)."""
    return _sp.spherical_jn(np.asarray(n), np.asarray(x, dtype=float), derivative=True)


def sph_bessel_y_derivative(n, x):
    """d/dx y_n(x)."""
    return _sp.spherical_yn(np.asarray(n), np.asarray(x, dtype=float), derivative=True)


def sph_bessel_j_radial_derivative_at_zero(n: int, k: float) -> float:
    """Radial derivative of j_n(k r) at r = 0: equals k/3 for n = 1, else 0.

    Only the first-degree radial function has a non-vanishing slope at the
    expansion center, which is what reduces the velocity at a point to a
    combination of the three first-degree coefficients.
    """
    if n < 0:
        raise InvalidOrderError(f"negative degree {n}")
    if k <= 0:
        raise SingularArgumentError(f"wavenumber must be positive, got {k}")
    return k / 3.0 if n == 1 else 0.0


def sph_hankel2(n, x):
    """Spherical Hankel function of the second kind h_n^(2)(x) = j_n(x) - i y_n(x).

    Outgoing radial function under the e^{+i omega t} convention. Singular
    at x = 0.
    """
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr <= 0):
        raise SingularArgumentError("h_n^(2) requires a strictly positive argument")
    n_arr = np.asarray(n)
    return _sp.spherical_jn(n_arr, x_arr) - 1j * _sp.spherical_yn(n_arr, x_arr)

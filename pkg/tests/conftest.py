import itertools

import numpy as np
import pytest

from velfield import MediumConstants, SourceSpec, wigner3j

MEDIUM = MediumConstants()


def check_wigner_orthogonality(max_j: int, tol: float = 1e-12) -> int:
    """Exhaustive orthogonality sums for all j1, j2 <= max_j; returns checks run."""
    checked = 0
    for j1, j2 in itertools.product(range(max_j + 1), repeat=2):
        j3_values = range(abs(j1 - j2), j1 + j2 + 1)
        for j3, j3p in itertools.product(j3_values, repeat=2):
            for m3 in range(-j3, j3 + 1):
                for m3p in range(-j3p, j3p + 1):
                    total = 0.0
                    for m1 in range(-j1, j1 + 1):
                        m2 = -m1 - m3
                        if abs(m2) > j2:
                            continue
                        total += (
                            (2 * j3 + 1)
                            * wigner3j(j1, j2, j3, m1, m2, m3)
                            * wigner3j(j1, j2, j3p, m1, m2, m3p)
                        )
                    expected = 1.0 if (j3 == j3p and m3 == m3p) else 0.0
                    assert abs(total - expected) < tol, (j1, j2, j3, j3p, m3, m3p)
                    checked += 1
    return checked


def wavenumber(frequency_hz: float, medium: MediumConstants = MEDIUM) -> float:
    return 2.0 * np.pi * frequency_hz / medium.sound_speed


def random_source(rng: np.random.Generator, k: float, min_radius: float = 0.4) -> SourceSpec:
    """A random plane wave or point source outside ``min_radius``."""
    theta = np.arccos(rng.uniform(-1.0, 1.0))
    phi = rng.uniform(-np.pi, np.pi)
    if rng.uniform() < 0.5:
        return SourceSpec.plane_wave(theta, phi)
    return SourceSpec.point_source(rng.uniform(min_radius, 2.0), theta, phi)


def random_interior_points(rng: np.random.Generator, count: int, radius: float) -> np.ndarray:
    """Uniform-in-shell random points with radii in (0.05, 1] x radius."""
    directions = rng.normal(size=(count, 3))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    radii = radius * rng.uniform(0.05, 1.0, size=count)
    return directions * radii[:, None]


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240915)

"""Frequency-independent operator matrices mapping global pressure
coefficients to region-wide velocity coefficients.

``build_b1m`` assembles the matrix taking the pressure coefficient vector
(degrees up to L) to the coefficient vector of the translated first-degree
pressure data (degrees up to L-1) for one of the three orders m in
{-1, 0, +1}. ``build_velocity_operator`` combines those three into the
operators for the Cartesian velocity components. None of the entries depend
on the wavenumber, so the matrices are built once and reused across the
whole frequency axis.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from .coupling import gaunt_g
from .exceptions import DegreeTooSmallError, ShapeError
from .shbasis import SHVector, num_coeffs, sh_index

__all__ = [
    "MediumConstants",
    "OperatorMatrix",
    "build_b1m",
    "build_velocity_operator",
    "velocity_operators",
    "apply_operator",
    "save_operator",
    "load_operator",
    "OPERATOR_FORMAT_VERSION",
]

# bump when the SH conventions behind the entries change
OPERATOR_FORMAT_VERSION = 1

_AXES = ("x", "y", "z")


@dataclass(frozen=True)
class MediumConstants:
    """Acoustic medium constants (defaults: air at 20 degrees C)."""

    density: float = 1.2041  # kg/m^3
    sound_speed: float = 343.0  # m/s

    def __post_init__(self):
        if self.density <= 0 or self.sound_speed <= 0:
            raise ValueError("medium constants must be strictly positive")


@dataclass(frozen=True)
class OperatorMatrix:
    """A built operator with its degree bookkeeping.

    ``matrix`` has shape (L^2, (L+1)^2): the output velocity expansion stops
    at degree A = L - 1 because the rows for a = L would need pressure
    degrees beyond L. ``tag`` records which operator this is ("m=-1", "m=0",
    "m=+1", or an axis "x"/"y"/"z").
    """

    matrix: np.ndarray
    tag: str
    pressure_degree: int

    @property
    def velocity_degree(self) -> int:
        return self.pressure_degree - 1

    @property
    def rows(self) -> int:
        return self.matrix.shape[0]

    @property
    def cols(self) -> int:
        return self.matrix.shape[1]


@lru_cache(maxsize=None)
def _b1m_matrix(m: int, max_degree: int) -> np.ndarray:
    L = max_degree
    out = np.zeros((L * L, num_coeffs(L)), dtype=complex)
    for a in range(L):
        for l in (a - 1, a + 1):
            # only l = a -+ 1 couple to first-degree data; a = l is killed
            # by the parity of the zero-order Wigner-3j
            if l < 0 or l > L:
                continue
            for q in range(-l, l + 1):
                d = q - m
                if abs(d) > a:
                    continue
                out[sh_index(a, d), sh_index(l, q)] = gaunt_g(l, q, 1, m, a)
    out.flags.writeable = False
    return out


def build_b1m(m: int, max_degree: int) -> OperatorMatrix:
    """Operator taking pressure coefficients to translated first-degree
    coefficients of order ``m``.

    Parameters
    ----------
    m : int
        Order of the translated coefficient, one of {-1, 0, 1}.
    max_degree : int
        Maximum degree L of the pressure coefficients; must be >= 1.

    Returns
    -------
    OperatorMatrix
        Shape (L^2, (L+1)^2); entry ((a, d), (l, q)) is the coupling weight
        when d = q - m and a in {l-1, l+1}, zero otherwise.
    """
    if m not in (-1, 0, 1):
        raise ValueError(f"order must be one of -1, 0, 1, got {m}")
    if max_degree < 1:
        raise DegreeTooSmallError(
            f"pressure degree must be >= 1 to resolve first-degree data, got {max_degree}"
        )
    return OperatorMatrix(_b1m_matrix(m, max_degree), f"m={m}", max_degree)


@lru_cache(maxsize=None)
def _velocity_matrix(axis: str, max_degree: int, density: float, sound_speed: float) -> np.ndarray:
    b_minus = _b1m_matrix(-1, max_degree)
    b_zero = _b1m_matrix(0, max_degree)
    b_plus = _b1m_matrix(1, max_degree)
    s8 = np.sqrt(3.0 / (8.0 * np.pi))
    s4 = np.sqrt(3.0 / (4.0 * np.pi))
    scale = 1j / (3.0 * density * sound_speed)
    if axis == "x":
        out = scale * (s8 * b_minus - s8 * b_plus)
    elif axis == "y":
        out = scale * (-1j * s8 * b_minus - 1j * s8 * b_plus)
    else:
        out = scale * (s4 * b_zero)
    out.flags.writeable = False
    return out


def build_velocity_operator(
    axis: str, max_degree: int, medium: MediumConstants = MediumConstants()
) -> OperatorMatrix:
    """Operator taking pressure coefficients directly to the velocity
    coefficients along one Cartesian axis.

    The three axis operators are fixed linear combinations of the order
    -1/0/+1 operators with the 1/(3 rho0 c) and i factors folded in, so the
    coefficient vector they produce feeds the radial/harmonic series without
    further scaling.
    """
    if axis not in _AXES:
        raise ValueError(f"axis must be one of {_AXES}, got {axis!r}")
    if max_degree < 1:
        raise DegreeTooSmallError(
            f"pressure degree must be >= 1 to resolve first-degree data, got {max_degree}"
        )
    return OperatorMatrix(
        _velocity_matrix(axis, max_degree, medium.density, medium.sound_speed),
        axis,
        max_degree,
    )


def velocity_operators(
    max_degree: int, medium: MediumConstants = MediumConstants()
) -> tuple[OperatorMatrix, OperatorMatrix, OperatorMatrix]:
    """The (x, y, z) velocity operators for one truncation degree."""
    return tuple(build_velocity_operator(ax, max_degree, medium) for ax in _AXES)


def apply_operator(op: OperatorMatrix, alpha: SHVector) -> SHVector:
    """Apply a built operator to a pressure coefficient vector.

    Returns the output coefficient vector with max degree L - 1, carrying
    over any validity radius of the input.
    """
    if len(alpha) != op.cols:
        raise ShapeError(
            f"operator expects {op.cols} pressure coefficients, got {len(alpha)}"
        )
    return SHVector(op.velocity_degree, op.matrix @ alpha.coeffs, alpha.valid_radius)


_MAGIC = b"VFOP"
_HEADER = struct.Struct("<4sIIII8s")


def save_operator(op: OperatorMatrix, path: str | Path) -> None:
    """Write an operator to a little-endian binary cache file.

    Layout: magic ``VFOP``, u32 format version, u32 pressure degree L,
    u32 rows, u32 cols, 8-byte zero-padded ASCII tag, then rows*cols
    complex128 entries in row-major order, little-endian.
    """
    header = _HEADER.pack(
        _MAGIC,
        OPERATOR_FORMAT_VERSION,
        op.pressure_degree,
        op.rows,
        op.cols,
        op.tag.encode("ascii").ljust(8, b"\0"),
    )
    data = np.ascontiguousarray(op.matrix, dtype="<c16")
    Path(path).write_bytes(header + data.tobytes())


def load_operator(path: str | Path) -> OperatorMatrix:
    """Read an operator written by :func:`save_operator`."""
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size or raw[:4] != _MAGIC:
        raise ValueError(f"{path}: not an operator cache file")
    magic, version, degree, rows, cols, tag = _HEADER.unpack_from(raw, 0)
    if version != OPERATOR_FORMAT_VERSION:
        raise ValueError(
            f"{path}: operator format version {version} != {OPERATOR_FORMAT_VERSION}"
        )
    matrix = np.frombuffer(
        raw, dtype="<c16", count=rows * cols, offset=_HEADER.size
    ).reshape(rows, cols).astype(complex)
    matrix.flags.writeable = False
    return OperatorMatrix(matrix, tag.rstrip(b"\0").decode("ascii"), degree)

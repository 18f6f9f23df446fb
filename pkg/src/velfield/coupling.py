"""Exact Wigner-3j symbols and the translation coupling coefficient.

The coupling coefficient weights the re-expansion of a spherical-harmonic
pressure series about a shifted origin. For first-degree targets (the only
ones the velocity operators need) it vanishes unless the output degree a is
one of {l-1, l+1} and the output order is q - m, which is what makes the
operator matrices sparse.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

import numpy as np

__all__ = ["wigner3j", "gaunt_g"]


@lru_cache(maxsize=None)
def _wigner3j_signed_square(j1: int, j2: int, j3: int, m1: int, m2: int, m3: int):
    """Exact rational (sign, value^2) of the Wigner-3j symbol via the Racah sum.

    The symbol is sign * sqrt(square) with both factors exact; conversion to
    float happens once, in :func:`wigner3j`. Exactness avoids the factorial
    cancellation that destroys naive floating-point sums.
    """
    # selection rules
    if m1 + m2 + m3 != 0:
        return 0, Fraction(0)
    if not abs(j1 - j2) <= j3 <= j1 + j2:
        return 0, Fraction(0)
    if abs(m1) > j1 or abs(m2) > j2 or abs(m3) > j3:
        return 0, Fraction(0)

    prefactor = Fraction(
        factorial(j1 + j2 - j3) * factorial(j1 - j2 + j3) * factorial(-j1 + j2 + j3),
        factorial(j1 + j2 + j3 + 1),
    )
    prefactor *= (
        factorial(j1 + m1) * factorial(j1 - m1)
        * factorial(j2 + m2) * factorial(j2 - m2)
        * factorial(j3 + m3) * factorial(j3 - m3)
    )

    t_min = max(0, j2 - j3 - m1, j1 - j3 + m2)
    t_max = min(j1 + j2 - j3, j1 - m1, j2 + m2)
    racah_sum = Fraction(0)
    for t in range(t_min, t_max + 1):
        denom = (
            factorial(t)
            * factorial(j3 - j2 + t + m1)
            * factorial(j3 - j1 + t - m2)
            * factorial(j1 + j2 - j3 - t)
            * factorial(j1 - t - m1)
            * factorial(j2 - t + m2)
        )
        racah_sum += Fraction((-1) ** t, denom)

    if racah_sum == 0:
        return 0, Fraction(0)
    phase = (-1) ** (j1 - j2 - m3)
    sign = phase if racah_sum > 0 else -phase
    return sign, racah_sum * racah_sum * prefactor


def wigner3j(j1: int, j2: int, j3: int, m1: int, m2: int, m3: int) -> float:
    """Wigner-3j symbol (j1 j2 j3; m1 m2 m3), exact to double precision.

    Selection-rule violations (m1+m2+m3 != 0, triangle inequality, |m| > j)
    return 0.0 rather than raising.
    """
    sign, square = _wigner3j_signed_square(
        int(j1), int(j2), int(j3), int(m1), int(m2), int(m3)
    )
    if sign == 0:
        return 0.0
    # Fraction -> float is correctly rounded even when numerator/denominator
    # individually exceed the float range (large-j factorials).
    return sign * float(np.sqrt(float(square)))


@lru_cache(maxsize=None)
def gaunt_g(l: int, q: int, n: int, m: int, a: int) -> complex:
    """Coupling weight linking global coefficient (l, q) to translated (n, m)
    data at output degree a and output order q - m.

    Equal to 4 pi i^{n+a-l} (-1)^q sqrt((2l+1)(2n+1)(2a+1)/4pi) W1 W2 with
    W1 the zero-order Wigner-3j of (l, n, a) and W2 its counterpart at orders
    (-q, m, q-m). Zero whenever a violates the triangle/parity rules.
    """
    w1 = wigner3j(l, n, a, 0, 0, 0)
    if w1 == 0.0:
        return 0j
    w2 = wigner3j(l, n, a, -q, m, q - m)
    if w2 == 0.0:
        return 0j
    scale = np.sqrt((2 * l + 1) * (2 * n + 1) * (2 * a + 1) / (4.0 * np.pi))
    return complex(4.0 * np.pi * (1j) ** (n + a - l) * (-1) ** q * scale * w1 * w2)

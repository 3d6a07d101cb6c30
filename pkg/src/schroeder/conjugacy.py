"""Change-of-coordinate maps and the simplified conjugates of Schroeder's map.

Points of the extended plane are plain Python complex numbers or the
``INF`` sentinel. Only the handful of maps here need the point at infinity,
so it is handled by case analysis rather than projective coordinates.
"""

from __future__ import annotations

import math

from .iterators import schroeder_step
from .poly import TwoRootPolynomial


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


class PoleProximity(ValueError):
    pass


def is_inf(z) -> bool:
    return z is INF


def moebius(a: complex, b: complex, z):
    """M(z) = (z - a)/(z - b): a -> 0, b -> INF, INF -> 1."""
    if z is INF:
        return 1 + 0j
    if z == b:
        return INF
    return (z - a) / (z - b)


def moebius_inverse(a: complex, b: complex, w):
    """(a - b w)/(1 - w): 0 -> a, INF -> b, 1 -> INF."""
    if w is INF:
        return complex(b)
    if w == 1:
        return INF
    return (a - b * w) / (1 - w)


def affine_A(a: complex, b: complex, z: complex) -> complex:
    """Send a to 1 and b to -1."""
    return 1 + 2 * (z - a) / (a - b)


def affine_A_inverse(a: complex, b: complex, w: complex) -> complex:
    return a + (w - 1) * (a - b) / 2


def T_mn(m: int, n: int, z):
    """Schroeder's map for (z-1)^m (z+1)^n, as a rational function of degree 2."""
    if z is INF:
        return complex((m - n) / (m + n))
    num = (m - n) * z * z + 2 * (m + n) * z + (m - n)
    den = (m + n) * z * z + 2 * (m - n) * z + (m + n)
    if den == 0:
        return INF
    return num / den


def R_mn(m: int, n: int, z):
    """-(n/m) z^2, the conjugate of T_mn under M with roots (1, -1)."""
    if z is INF:
        return INF
    return -(n / m) * z * z


def pole_set(m: int, n: int) -> list[complex]:
    """Points of the sample plane where the residual maps blow up or lose conditioning.

    T_mn has poles where R_mn(M z) = 1, i.e. M z = +-i sqrt(m/n); their images
    under M are where M^-1 hits those poles. w = 1 sends M^-1 to infinity.
    """
    r = math.sqrt(m / n)
    poles_w = [1j * r, -1j * r]
    poles_z = [moebius_inverse(1, -1, w) for w in poles_w]
    return [1 + 0j, *poles_z, *poles_w]


def conjugacy_residual_T(m: int, n: int, a: complex, b: complex, sample: complex,
                         min_pole_distance: float = 1e-3) -> float:
    """Largest defect of A.S_f.A^-1 = T_mn and M.T_mn.M^-1 = R_mn at one point."""
    w = complex(sample)
    for p in pole_set(m, n):
        if abs(w - p) < min_pole_distance:
            raise PoleProximity(f"sample {w} within {min_pole_distance} of pole {p}")
    poly = TwoRootPolynomial(a, b, m, n)

    t = T_mn(m, n, w)
    lifted = affine_A(poly.a, poly.b, schroeder_step(poly, affine_A_inverse(poly.a, poly.b, w)))
    first = abs(lifted - t)

    z = moebius_inverse(1, -1, w)
    back = moebius(1, -1, T_mn(m, n, z))
    if back is INF:
        raise PoleProximity(f"M o T_mn o M^-1 is infinite at {w}")
    second = abs(back - R_mn(m, n, w))
    return max(first, second)


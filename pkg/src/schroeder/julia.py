"""Closed-form Julia sets of Schroeder's map for (z - a)^m (z - b)^n.

For m > n the Julia set is an Apollonius circle, the set of points whose
distances to the two roots are in the ratio n : m (the preimage of
|w| = m/n under w = (z - a)/(z - b)). For m == n it degenerates to the
perpendicular bisector of the roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


class InvalidMultiplicities(ValueError):
    pass


class CoincidentRoots(ValueError):
    pass


@dataclass(frozen=True)
class Line:
    point: complex
    direction: complex  # unit modulus

    def __post_init__(self):
        d = complex(self.direction)
        if not math.isclose(abs(d), 1.0, rel_tol=1e-12):
            d = d / abs(d)
        object.__setattr__(self, "direction", d)
        object.__setattr__(self, "point", complex(self.point))

    def to_dict(self) -> dict:
        return {"kind": "line", "point": [self.point.real, self.point.imag],
                "direction": [self.direction.real, self.direction.imag]}


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))

    def to_dict(self) -> dict:
        return {"kind": "circle", "center": [self.center.real, self.center.imag],
                "radius": self.radius}


JuliaLocus = Line | Circle

IMAGINARY_AXIS = Line(0j, 1j)


def locus_from_dict(d: dict) -> JuliaLocus:
    if d["kind"] == "line":
        return Line(complex(*d["point"]), complex(*d["direction"]))
    return Circle(complex(*d["center"]), d["radius"])


def _check(m: int, n: int) -> None:
    if n < 1 or m < n:
        raise InvalidMultiplicities(f"need m >= n >= 1, got m={m}, n={n}")


def normalized_circle_exact(m: int, n: int) -> tuple[Fraction, Fraction]:
    """(center, radius) of the normalized Julia circle as exact rationals, m > n."""
    if n < 1 or m <= n:
        raise InvalidMultiplicities(f"need m > n >= 1, got m={m}, n={n}")
    d = m * m - n * n
    return Fraction(-(m * m + n * n), d), Fraction(2 * m * n, d)


def julia_locus_normalized(m: int, n: int) -> JuliaLocus:
    """Julia set for the roots moved to +1 (multiplicity m) and -1 (multiplicity n)."""
    _check(m, n)
    if m == n:
        return IMAGINARY_AXIS
    c, r = normalized_circle_exact(m, n)
    return Circle(complex(float(c), 0.0), float(r))


def julia_locus_general(m: int, n: int, a: complex, b: complex) -> JuliaLocus:
    """Julia set for roots a (multiplicity m) and b (multiplicity n).

    The circle is the normalized one pulled back through z -> 1 + 2(z-a)/(a-b):
    center (b m^2 - a n^2)/(m^2 - n^2), radius m n |a - b| / (m^2 - n^2).
    It sits around b, the root with the smaller multiplicity.
    """
    _check(m, n)
    a, b = complex(a), complex(b)
    if a == b:
        raise CoincidentRoots("a and b coincide")
    if m == n:
        return Line((a + b) / 2, 1j * (a - b) / abs(a - b))
    d = m * m - n * n
    center = (b * (m * m) - a * (n * n)) / d
    return Circle(center, m * n * abs(a - b) / d)


def flipped_sign_locus(m: int, n: int, a: complex, b: complex) -> Circle:
    """The circle with the opposite center sign, |z + (b m^2 - a n^2)/(m^2 - n^2)| = r.

    Kept only so the sign of the center can be checked against the dynamics.
    """
    good = julia_locus_general(m, n, a, b)
    if not isinstance(good, Circle):
        raise InvalidMultiplicities("only defined for m > n")
    return Circle(-good.center, good.radius)


def signed_distance(locus: JuliaLocus, z: complex) -> float:
    """Positive on root a's side, negative on root b's side.

    Circle: |z - center| - radius. Line: signed perpendicular distance, positive
    on the half-plane that lies clockwise of the direction (the +1 side of the
    imaginary axis pointing up).
    """
    if isinstance(locus, Circle):
        return abs(z - locus.center) - locus.radius
    return -((z - locus.point) * locus.direction.conjugate()).imag


def hyperbola_check(m: int, n: int) -> tuple[float, float, float]:
    """Center magnitude x and radius y of the normalized circle; x^2 - y^2 = 1."""
    c, r = normalized_circle_exact(m, n)
    x, y = -c, r
    residual = abs(x * x - y * y - 1)
    return float(x), float(y), float(residual)


def hyperbola_identity(m: int, n: int) -> bool:
    return (m * m + n * n) ** 2 - (2 * m * n) ** 2 == (m * m - n * n) ** 2


class InvalidParameter(ValueError):
    pass


def p_class_locus(p) -> Circle:
    """Normalized Julia circle shared by every (m, n) with m/n == p > 1.

    center -(p^2 + 1)/(p^2 - 1), radius 2p/(p^2 - 1), evaluated in rationals.
    """
    p = Fraction(p)
    if p <= 1:
        raise InvalidParameter(f"p must exceed 1, got {p}")
    q = p * p
    return Circle(complex(float(-(q + 1) / (q - 1)), 0.0), float(2 * p / (q - 1)))

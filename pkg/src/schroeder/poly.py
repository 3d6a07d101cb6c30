"""Two-root polynomials f(z) = (z - a)^m (z - b)^n and their reduced quotients.

No coefficients are ever formed. Everything is written in terms of the root
offsets u = z - a and v = z - b so the common factors u^(m-1) v^(n-1) cancel
before any arithmetic happens; this keeps large multiplicities finite and
makes the roots themselves exact zeros of f/f'.
"""

from __future__ import annotations

from dataclasses import dataclass


class DenominatorVanished(ZeroDivisionError):
    """The reduced denominator m*v + n*u is zero (the non-root critical point)."""


@dataclass(frozen=True)
class TwoRootPolynomial:
    a: complex
    b: complex = 0j
    m: int = 1
    n: int = 0

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))
        if int(self.m) != self.m or int(self.n) != self.n:
            raise ValueError("multiplicities must be integers")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "n", int(self.n))
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if self.n < 0:
            raise ValueError(f"n must be >= 0, got {self.n}")
        if self.n >= 1 and self.a == self.b:
            raise ValueError("roots must be distinct when n >= 1")

    @property
    def single_root(self) -> bool:
        return self.n == 0

    @property
    def critical_point(self) -> complex | None:
        """Zero of f' that is not a root, or None for f = (z - a)^m."""
        if self.n == 0:
            return None
        return (self.m * self.b + self.n * self.a) / (self.m + self.n)

    def swapped(self) -> "TwoRootPolynomial":
        return TwoRootPolynomial(self.b, self.a, self.n, self.m)


def _ipow(x: complex, k: int) -> complex:
    # square-and-multiply; x**k on complex goes through exp/log for large k
    result = 1 + 0j
    while k:
        if k & 1:
            result *= x
        x *= x
        k >>= 1
    return result


def eval_f(poly: TwoRootPolynomial, z: complex) -> complex:
    """(z - a)^m (z - b)^n. Overflows to inf/nan for huge |z| or exponents."""
    z = complex(z)
    value = _ipow(z - poly.a, poly.m)
    if poly.n:
        value *= _ipow(z - poly.b, poly.n)
    return value


def eval_f_over_fprime(poly: TwoRootPolynomial, z: complex) -> complex:
    """Newton correction f/f' = u v / (m v + n u); exactly 0 at either root."""
    z = complex(z)
    u = z - poly.a
    if poly.n == 0:
        return u / poly.m
    v = z - poly.b
    den = poly.m * v + poly.n * u
    if den == 0:
        raise DenominatorVanished(f"f' vanishes off the roots at z={z}")
    return u * v / den


def eval_Lf(poly: TwoRootPolynomial, z: complex) -> complex:
    """Degree of logarithmic convexity L_f = f f'' / f'^2 in reduced form.

    L_f = [m(m-1) v^2 + 2 m n u v + n(n-1) u^2] / (m v + n u)^2

    For n = 0 this is the constant (m - 1)/m.
    """
    m, n = poly.m, poly.n
    if n == 0:
        return complex((m - 1) / m)
    z = complex(z)
    u = z - poly.a
    v = z - poly.b
    den = m * v + n * u
    if den == 0:
        raise DenominatorVanished(f"f' vanishes off the roots at z={z}")
    # grouped so that swapping (a, m) with (b, n) gives bit-identical results
    num = (m * (m - 1) * (v * v) + n * (n - 1) * (u * u)) + 2 * m * n * (u * v)
    return num / (den * den)

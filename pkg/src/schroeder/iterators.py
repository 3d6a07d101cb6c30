"""Newton, Schroeder and Chebyshev-Halley steps, orbits, and the computational
order of convergence."""

from __future__ import annotations

import enum
import math
import sys
from dataclasses import dataclass, field

from .poly import DenominatorVanished, TwoRootPolynomial, eval_f_over_fprime, eval_Lf


class HitSingularity(ArithmeticError):
    """The step map has a pole (or an undefined reduced form) at this point."""


class InsufficientData(ValueError):
    pass


class Method(str, enum.Enum):
    NEWTON = "newton"
    SCHROEDER = "schroeder"
    CHEBYSHEV_HALLEY = "chebyshev_halley"


@dataclass(frozen=True)
class MethodSpec:
    kind: Method = Method.SCHROEDER
    alpha: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", Method(self.kind))
        alpha = float(self.alpha)
        if not math.isfinite(alpha):
            raise ValueError("alpha must be finite")
        object.__setattr__(self, "alpha", alpha)

    @classmethod
    def newton(cls) -> "MethodSpec":
        return cls(Method.NEWTON)

    @classmethod
    def schroeder(cls) -> "MethodSpec":
        return cls(Method.SCHROEDER)

    @classmethod
    def chebyshev(cls) -> "MethodSpec":
        return cls(Method.CHEBYSHEV_HALLEY, 0.0)

    @classmethod
    def halley(cls) -> "MethodSpec":
        return cls(Method.CHEBYSHEV_HALLEY, 0.5)

    @classmethod
    def parse(cls, text: str, alpha: float | None = None) -> "MethodSpec":
        """'newton', 'schroeder', 'chebyshev', 'halley' or 'chebyshev_halley'."""
        key = text.strip().lower().replace("-", "_")
        if key in ("schroder", "schröder"):
            key = "schroeder"
        if key == "chebyshev":
            return cls(Method.CHEBYSHEV_HALLEY, 0.0 if alpha is None else alpha)
        if key == "halley":
            return cls(Method.CHEBYSHEV_HALLEY, 0.5 if alpha is None else alpha)
        kind = Method(key)
        return cls(kind, 0.0 if alpha is None else alpha)

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "alpha": self.alpha}


def newton_step(poly: TwoRootPolynomial, z: complex) -> complex:
    try:
        return z - eval_f_over_fprime(poly, z)
    except DenominatorVanished as exc:
        raise HitSingularity(str(exc)) from None


def schroeder_step(poly: TwoRootPolynomial, z: complex) -> complex:
    """Newton's method applied to f/f'.

    With u = z - a, v = z - b the correction (f/f') / (1 - L_f) collapses to
    u v (m v + n u) / (m v^2 + n u^2). Evaluating that form directly leaves
    only the true poles of the map (m v^2 + n u^2 = 0); the zero of f' off
    the roots is a removable singularity here.
    """
    z = complex(z)
    u = z - poly.a
    if poly.n == 0:
        return z - u
    v = z - poly.b
    m, n = poly.m, poly.n
    den = m * v * v + n * u * u
    if den == 0:
        raise HitSingularity(f"Schroeder map has a pole at z={z}")
    return z - u * v * (m * v + n * u) / den


def chebyshev_halley_step(poly: TwoRootPolynomial, alpha: float, z: complex) -> complex:
    # z - [1 + L/(2(1 - alpha L))] f/f'; alpha=0 Chebyshev, 1/2 Halley
    z = complex(z)
    try:
        q = eval_f_over_fprime(poly, z)
        lf = eval_Lf(poly, z)
    except DenominatorVanished as exc:
        raise HitSingularity(str(exc)) from None
    den = 1 - alpha * lf
    if den == 0:
        raise HitSingularity(f"1 - alpha*L_f vanishes at z={z}")
    return z - (1 + 0.5 * lf / den) * q


def step(poly: TwoRootPolynomial, method: MethodSpec, z: complex) -> complex:
    kind = method.kind
    if kind is Method.SCHROEDER:
        return schroeder_step(poly, z)
    if kind is Method.NEWTON:
        return newton_step(poly, z)
    return chebyshev_halley_step(poly, method.alpha, z)


class Status(enum.IntEnum):
    CONVERGED = 0
    DIVERGED = 1
    MAX_ITERATIONS = 2
    HIT_SINGULARITY = 3


class Root(enum.IntEnum):
    A = 0
    B = 1


@dataclass(frozen=True)
class OrbitParams:
    conv_tol: float = 1e-9
    max_iter: int = 200
    escape_radius: float = 1e6

    def check(self, poly: TwoRootPolynomial) -> None:
        if not self.conv_tol > 0:
            raise ValueError("conv_tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        reach = abs(poly.a) if poly.n == 0 else max(abs(poly.a), abs(poly.b))
        if not self.escape_radius > reach + 1:
            raise ValueError("escape_radius must exceed max(|a|, |b|) + 1")
        if poly.n and not self.conv_tol < abs(poly.a - poly.b) / 2:
            raise ValueError("conv_tol must be below half the root separation")

    def to_dict(self) -> dict:
        return {"conv_tol": self.conv_tol, "max_iter": self.max_iter,
                "escape_radius": self.escape_radius}


@dataclass
class OrbitResult:
    status: Status
    root: Root | None
    steps: int
    iterates: list[complex] = field(default_factory=list)
    errors: list[float] = field(default_factory=list)

    @property
    def converged(self) -> bool:
        return self.status is Status.CONVERGED


def _nearest_root(poly: TwoRootPolynomial, z: complex, tol: float) -> Root | None:
    da = abs(z - poly.a)
    if poly.n == 0:
        return Root.A if da < tol else None
    db = abs(z - poly.b)
    if da < tol or db < tol:
        return Root.A if da <= db else Root.B
    return None


def run_orbit(poly: TwoRootPolynomial, method: MethodSpec, z0: complex,
              params: OrbitParams = OrbitParams(), record: bool = True) -> OrbitResult:
    """Iterate the method from z0 until it lands near a root, escapes, or runs out.

    With record=False the iterates and errors are not kept; status, root and
    step count are identical either way.
    """
    params.check(poly)
    z = complex(z0)
    iterates = [z] if record else []
    status = Status.MAX_ITERATIONS
    root = _nearest_root(poly, z, params.conv_tol)
    k = 0
    if root is not None:
        status = Status.CONVERGED
    else:
        while k < params.max_iter:
            try:
                z = step(poly, method, z)
            except HitSingularity:
                status = Status.HIT_SINGULARITY
                break
            k += 1
            if record:
                iterates.append(z)
            if not (math.isfinite(z.real) and math.isfinite(z.imag)) or abs(z) > params.escape_radius:
                status = Status.DIVERGED
                break
            root = _nearest_root(poly, z, params.conv_tol)
            if root is not None:
                status = Status.CONVERGED
                break
    errors = []
    if record and root is not None:
        target = poly.a if root is Root.A else poly.b
        errors = [abs(w - target) for w in iterates]
    return OrbitResult(status, root, k, iterates, errors)


_EPS_FLOOR = 1e2 * sys.float_info.epsilon


def estimate_convergence_order(errors) -> float:
    """COC from the last admissible triple: ln(e[k+1]/e[k]) / ln(e[k]/e[k-1]).

    Errors at or below 100 machine epsilons are rounding noise and are dropped,
    along with everything after the first such value.
    """
    usable = []
    for e in errors:
        e = float(e)
        if not (e > _EPS_FLOOR) or not math.isfinite(e):
            break
        usable.append(e)
    for k in range(len(usable) - 2, 0, -1):
        e0, e1, e2 = usable[k - 1], usable[k], usable[k + 1]
        if e0 > e1 > e2:
            return math.log(e2 / e1) / math.log(e1 / e0)
    raise InsufficientData("need three strictly decreasing errors above the rounding floor")

"""Empirical checks of the analytic Julia sets and of convergence rates.

Basin boundaries are found by bisection along rays, since the attractor
label is a discontinuous function of the seed. Reports are plain dicts with
a fixed key order so their JSON dumps diff cleanly.
"""

from __future__ import annotations

import cmath
import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .iterators import (InsufficientData, MethodSpec, OrbitParams, Root, Status,
                        estimate_convergence_order, run_orbit)
from .julia import Circle, JuliaLocus, signed_distance
from .poly import TwoRootPolynomial


class NoSignChange(ValueError):
    pass


class NonConvergentEndpoint(ValueError):
    pass


class CertificationError(RuntimeError):
    pass


@dataclass(frozen=True)
class BoundaryProbe:
    ray_origin: complex
    ray_direction: complex
    t: float
    crossing: complex
    analytic_distance: float

    @property
    def angle(self) -> float:
        return math.atan2(self.ray_direction.imag, self.ray_direction.real)

    def to_dict(self) -> dict:
        return {
            "angle": self.angle,
            "origin": [self.ray_origin.real, self.ray_origin.imag],
            "direction": [self.ray_direction.real, self.ray_direction.imag],
            "t": self.t,
            "crossing": [self.crossing.real, self.crossing.imag],
            "analytic_distance": self.analytic_distance,
        }


@dataclass(frozen=True)
class BoundaryParams:
    n_rays: int = 64
    bisect_tol: float = 1e-8
    # ray length in radii (circle) or root separations (line); the expected
    # crossing sits at t = t_max/reach, kept off the dyadic midpoints
    reach: float = 2.2
    orbit: OrbitParams = OrbitParams()


def _label(poly, method, z, params) -> Root | None:
    res = run_orbit(poly, method, z, params, record=False)
    return res.root if res.status is Status.CONVERGED else None


# Split fractions tried in order. A midpoint can sit exactly on the Julia set
# (e.g. a repelling fixed point), so a slightly off-center split is used then.
_SPLITS = (0.5, 0.5 + 1e-6, 0.5 - 1e-6, 0.5 + 1e-3, 0.5 - 1e-3)


def find_boundary_crossing(poly: TwoRootPolynomial, method: MethodSpec, origin: complex,
                           direction: complex, t_max: float, bisect_tol: float = 1e-8,
                           params: OrbitParams = OrbitParams(),
                           locus: JuliaLocus | None = None) -> BoundaryProbe:
    """Bisect t on origin + t*direction between two seeds with different attractors.

    Only the attractor labels of the current bracket ends are used; the
    crossing is the midpoint of the final bracket, narrower than bisect_tol.
    """
    if not bisect_tol > 0:
        raise ValueError("bisect_tol must be positive")
    origin = complex(origin)
    direction = complex(direction)
    direction /= abs(direction)
    lo, hi = 0.0, float(t_max)
    lo_root = _label(poly, method, origin, params)
    hi_root = _label(poly, method, origin + hi * direction, params)
    if lo_root is None or hi_root is None:
        raise NonConvergentEndpoint(f"ray endpoint orbit does not converge (origin {origin})")
    if lo_root is hi_root:
        raise NoSignChange(f"both ends of the ray reach root {lo_root.name}")
    while hi - lo >= bisect_tol:
        for frac in _SPLITS:
            mid = lo + frac * (hi - lo)
            label = _label(poly, method, origin + mid * direction, params)
            if label is not None:
                break
        else:
            raise NonConvergentEndpoint(f"no convergent split point near t={lo}")
        if not lo < mid < hi:
            break
        if label is lo_root:
            lo = mid
        else:
            hi = mid
    t = 0.5 * (lo + hi)
    crossing = origin + t * direction
    dist = abs(signed_distance(locus, crossing)) if locus is not None else math.nan
    return BoundaryProbe(origin, direction, t, crossing, dist)


def ray_fan(locus: JuliaLocus, poly: TwoRootPolynomial, n_rays: int,
            reach: float = 2.2) -> list[tuple[complex, complex, float]]:
    """(origin, direction, t_max) for each ray.

    Circle: rays from the center at evenly spaced angles, length reach*radius.
    Line: rays at right angles to the line starting one root separation on
    root b's side, length reach*separation, spread along the line over two
    separations either side of its point.
    """
    if isinstance(locus, Circle):
        return [(locus.center, cmath.exp(2j * math.pi * k / n_rays), reach * locus.radius)
                for k in range(n_rays)]
    sep = abs(poly.a - poly.b)
    normal = -1j * locus.direction  # points toward root a
    rays = []
    for k in range(n_rays):
        s = (2 * k / (n_rays - 1) - 1) * 2 * sep
        origin = locus.point + s * locus.direction - sep * normal
        rays.append((origin, normal, reach * sep))
    return rays


def _probe(args):
    poly, method, origin, direction, t_max, bp, locus = args
    try:
        return find_boundary_crossing(poly, method, origin, direction, t_max,
                                      bp.bisect_tol, bp.orbit, locus)
    except (NoSignChange, NonConvergentEndpoint) as exc:
        return f"{type(exc).__name__}: {exc}"


def boundary_report(poly: TwoRootPolynomial, method: MethodSpec, locus: JuliaLocus,
                    params: BoundaryParams = BoundaryParams(), workers: int = 1) -> dict:
    """Probe the basin boundary along a fan of rays and compare with ``locus``.

    Raises CertificationError if more than 10% of the rays fail to bracket a
    boundary.
    """
    if params.n_rays < 8:
        raise ValueError("n_rays must be >= 8")
    jobs = [(poly, method, o, d, t, params, locus)
            for o, d, t in ray_fan(locus, poly, params.n_rays, params.reach)]
    if workers <= 1:
        outcomes = [_probe(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_probe, jobs))
    probes = [o for o in outcomes if isinstance(o, BoundaryProbe)]
    failures = [{"ray": k, "error": o} for k, o in enumerate(outcomes) if isinstance(o, str)]
    if len(failures) > 0.1 * params.n_rays:
        raise CertificationError(f"{len(failures)} of {params.n_rays} rays failed: "
                                 f"{failures[0]['error']}")
    devs = [p.analytic_distance for p in probes]
    return {
        "config": {
            "poly": poly_to_dict(poly),
            "method": method.to_dict(),
            "locus": locus.to_dict(),
            "n_rays": params.n_rays,
            "bisect_tol": params.bisect_tol,
            "reach": params.reach,
            "orbit": params.orbit.to_dict(),
        },
        "probes": [p.to_dict() for p in probes],
        "failures": failures,
        "max_dev": max(devs),
        "mean_dev": sum(devs) / len(devs),
        "coc": [],
    }


def probes_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["angle", "t", "crossing_re", "crossing_im", "analytic_distance"])
    for p in report["probes"]:
        w.writerow([repr(p["angle"]), repr(p["t"]), repr(p["crossing"][0]),
                    repr(p["crossing"][1]), repr(p["analytic_distance"])])
    return buf.getvalue()


def poly_to_dict(poly: TwoRootPolynomial) -> dict:
    return {"a": [poly.a.real, poly.a.imag], "b": [poly.b.real, poly.b.imag],
            "m": poly.m, "n": poly.n}


def convergence_report(poly: TwoRootPolynomial, method: MethodSpec, seeds,
                       params: OrbitParams = OrbitParams()) -> dict:
    """Attained root, step count and COC per seed, plus per-root summaries.

    A seed that fails to converge, or converges too fast for a COC estimate,
    is recorded with an error string instead of aborting the report.
    """
    rows = []
    for k, z0 in enumerate(seeds):
        z0 = complex(z0)
        res = run_orbit(poly, method, z0, params)
        row = {"seed": [z0.real, z0.imag], "status": res.status.name.lower(),
               "root": res.root.name if res.root is not None else None,
               "steps": res.steps, "coc": None, "error": None}
        if res.converged:
            try:
                row["coc"] = estimate_convergence_order(res.errors)
            except InsufficientData as exc:
                row["error"] = str(exc)
        else:
            row["error"] = f"orbit ended with {res.status.name}"
        rows.append(row)

    summary = {}
    for root in Root:
        mine = [r for r in rows if r["root"] == root.name]
        cocs = [r["coc"] for r in mine if r["coc"] is not None]
        summary[root.name] = {
            "count": len(mine),
            "mean_steps": sum(r["steps"] for r in mine) / len(mine) if mine else None,
            "min_coc": min(cocs) if cocs else None,
            "max_coc": max(cocs) if cocs else None,
            "mean_coc": sum(cocs) / len(cocs) if cocs else None,
        }
    return {
        "config": {"poly": poly_to_dict(poly), "method": method.to_dict(),
                   "orbit": params.to_dict(), "n_seeds": len(rows)},
        "probes": [],
        "max_dev": None,
        "mean_dev": None,
        "coc": rows,
        "summary": summary,
    }

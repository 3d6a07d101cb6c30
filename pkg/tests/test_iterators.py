import cmath
import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import direct_derivatives
from schroeder.iterators import (HitSingularity, InsufficientData, MethodSpec, OrbitParams,
                                 Root, Status, chebyshev_halley_step,
                                 estimate_convergence_order, newton_step, run_orbit,
                                 schroeder_step, step)
from schroeder.poly import TwoRootPolynomial

coord = st.floats(-3, 3, allow_nan=False)
mult = st.integers(1, 8)
METHODS = [MethodSpec.newton(), MethodSpec.schroeder(), MethodSpec.chebyshev(),
           MethodSpec.halley(), MethodSpec("chebyshev_halley", -2.5)]


def schroeder_displayed(a, b, z):
    # Schroeder's map for (z - a)(z - b), multiplied out
    return ((z * z * (a + b) - 4 * a * b * z + a * b * (a + b))
            / (a * a - 2 * z * (a + b) + b * b + 2 * z * z))


# newton

@pytest.mark.parametrize("k", [1, 2, 3, 7, 20])
def test_newton_on_power(k):
    z = 0.7 - 2.1j
    assert newton_step(TwoRootPolynomial(0, m=k), z) == pytest.approx(z * (k - 1) / k, abs=1e-15)


def test_newton_quadratic_example():
    assert newton_step(TwoRootPolynomial(1, -1, 1, 1), 2) == 1.25


@given(st.floats(-10, 10, allow_nan=False))
def test_newton_keeps_imaginary_axis(y):
    assume(abs(y) > 1e-9)
    w = newton_step(TwoRootPolynomial(1, -1, 1, 1), complex(0, y))
    assert w.real == 0


def test_newton_singular_at_critical_point():
    with pytest.raises(HitSingularity):
        newton_step(TwoRootPolynomial(1, -1, 1, 1), 0)


# schroeder

@pytest.mark.parametrize("k", range(1, 10))
@pytest.mark.parametrize("z", [3 + 4j, -1e-5j, 123.25])
def test_schroeder_one_step_on_power(k, z):
    assert schroeder_step(TwoRootPolynomial(0, m=k), z) == 0


def test_schroeder_quadratic_example():
    poly = TwoRootPolynomial(1, -1, 1, 1)
    assert schroeder_step(poly, 2) == pytest.approx(0.8, abs=1e-15)
    assert schroeder_displayed(1, -1, 2) == 0.8
    # M(S(z)) = -M(z)^2 with M(z) = (z - 1)/(z + 1)
    w = (2 - 1) / (2 + 1)
    s = schroeder_step(poly, 2)
    assert (s - 1) / (s + 1) == pytest.approx(-w * w)


def test_schroeder_root_is_fixed():
    assert schroeder_step(TwoRootPolynomial(1, -1, 2, 1), 1) == 1


@settings(max_examples=200)
@given(coord, coord, coord, coord)
def test_schroeder_matches_displayed_quadratic_map(ax, ay, x, y):
    a, b, z = complex(ax, ay), -1 + 0.5j, complex(x, y)
    assume(abs(a - b) > 0.1)
    den = a * a - 2 * z * (a + b) + b * b + 2 * z * z
    assume(abs(den) > 1e-3)
    expected = schroeder_displayed(a, b, z)
    got = schroeder_step(TwoRootPolynomial(a, b, 1, 1), z)
    assert abs(got - expected) <= 1e-10 * max(1, abs(expected))


@settings(max_examples=300)
@given(coord, coord, mult, mult)
def test_schroeder_matches_newton_on_f_over_fprime(x, y, m, n):
    # z - (f/f') / (1 - f f''/f'^2) from unreduced derivatives
    poly = TwoRootPolynomial(1, -1, m, n)
    z = complex(x, y)
    f, f1, f2 = direct_derivatives(poly, z)
    assume(abs(f1) > 1e-200 and abs(f1 * f1 - f * f2) > 1e-200)
    assume(min(abs(z - 1), abs(z + 1), abs(z - poly.critical_point)) > 1e-3)
    expected = z - f * f1 / (f1 * f1 - f * f2)
    try:
        got = schroeder_step(poly, z)
    except HitSingularity:
        return
    assert abs(got - expected) <= 1e-9 * max(1, abs(expected))


def test_schroeder_pole():
    # m v^2 + n u^2 = 0 for (1, -1, 1, 1) at z = +-i
    with pytest.raises(HitSingularity):
        schroeder_step(TwoRootPolynomial(1, -1, 1, 1), 1j)


def test_schroeder_removable_at_critical_point():
    poly = TwoRootPolynomial(1, -1, 2, 1)
    z = poly.critical_point
    f, f1, f2 = direct_derivatives(poly, z + 1e-7)
    assert schroeder_step(poly, z) == pytest.approx(z + 1e-7 - f * f1 / (f1 * f1 - f * f2),
                                                    abs=1e-6)


# chebyshev-halley

def test_chebyshev_on_square():
    assert chebyshev_halley_step(TwoRootPolynomial(0, m=2), 0.0, 1) == 0.375


@settings(max_examples=100)
@given(coord, coord)
def test_large_alpha_approaches_newton(x, y):
    poly = TwoRootPolynomial(1, -1, 2, 3)
    z = complex(x, y)
    assume(abs(z - poly.critical_point) > 1e-2)
    assert abs(chebyshev_halley_step(poly, 1e12, z) - newton_step(poly, z)) <= 1e-6


def test_halley_matches_classical_formula():
    poly = TwoRootPolynomial(1, -1, 1, 1)
    f, f1, f2 = direct_derivatives(poly, 2 + 0j)
    classical = 2 - 2 * f * f1 / (2 * f1 * f1 - f * f2)
    assert chebyshev_halley_step(poly, 0.5, 2) == pytest.approx(classical, abs=1e-15)
    assert classical == pytest.approx(14 / 13)


@given(coord, coord, mult, mult)
def test_halley_classical_formula_random(x, y, m, n):
    poly = TwoRootPolynomial(0.5j, 2, m, n)
    z = complex(x, y)
    f, f1, f2 = direct_derivatives(poly, z)
    den = 2 * f1 * f1 - f * f2
    assume(abs(den) > 1e-200 and min(abs(z - 0.5j), abs(z - 2), abs(z - poly.critical_point)) > 1e-3)
    expected = z - 2 * f * f1 / den
    try:
        got = chebyshev_halley_step(poly, 0.5, z)
    except HitSingularity:
        return
    assert abs(got - expected) <= 1e-9 * max(1, abs(expected))


# orbits

def test_orbit_schroeder_on_power_one_step():
    res = run_orbit(TwoRootPolynomial(0, m=7), MethodSpec.schroeder(), 3 + 4j)
    assert res.status is Status.CONVERGED and res.root is Root.A and res.steps == 1


@pytest.mark.parametrize("z0", [0.1 + 3j, 2, 1e3 - 5j, 0.01])
def test_orbit_newton_quadratic_right_half_plane(z0):
    res = run_orbit(TwoRootPolynomial(1, -1, 1, 1), MethodSpec.newton(), z0)
    assert res.root is Root.A


@pytest.mark.parametrize("method", METHODS)
def test_orbit_from_root(method):
    res = run_orbit(TwoRootPolynomial(2j, -1, 3, 2), method, 2j)
    assert res.root is Root.A and res.steps == 0 and res.iterates == [2j]


@pytest.mark.parametrize("method", METHODS)
def test_orbit_result_shape(method):
    params = OrbitParams()
    res = run_orbit(TwoRootPolynomial(1, -1, 3, 2), method, 0.4 + 0.9j, params)
    assert len(res.iterates) == res.steps + 1
    if res.converged:
        target = 1 if res.root is Root.A else -1
        assert abs(res.iterates[-1] - target) < params.conv_tol
        assert res.errors == [abs(z - target) for z in res.iterates]


def test_orbit_statuses():
    poly = TwoRootPolynomial(1, -1, 1, 1)
    assert run_orbit(poly, MethodSpec.schroeder(), 1j).status is Status.HIT_SINGULARITY
    # the imaginary axis is invariant and repelling: stays forever
    assert run_orbit(poly, MethodSpec.newton(), 0.5j,
                     OrbitParams(max_iter=30)).status is Status.MAX_ITERATIONS
    # Newton on z^2 near 0 ... just exercise divergence with a tiny escape radius
    far = run_orbit(TwoRootPolynomial(0, m=1), MethodSpec.chebyshev(), 10,
                    OrbitParams(escape_radius=2))
    assert far.status in (Status.DIVERGED, Status.CONVERGED)


def test_orbit_param_checks():
    poly = TwoRootPolynomial(1, -1, 1, 1)
    with pytest.raises(ValueError):
        run_orbit(poly, MethodSpec.newton(), 0.5, OrbitParams(conv_tol=0))
    with pytest.raises(ValueError):
        run_orbit(poly, MethodSpec.newton(), 0.5, OrbitParams(conv_tol=1.5))
    with pytest.raises(ValueError):
        run_orbit(poly, MethodSpec.newton(), 0.5, OrbitParams(escape_radius=1.5))
    with pytest.raises(ValueError):
        run_orbit(poly, MethodSpec.newton(), 0.5, OrbitParams(max_iter=0))


def test_record_flag_does_not_change_outcome():
    poly = TwoRootPolynomial(1, -1, 5, 2)
    for z0 in (0.3j, -2 + 1j, 4, -0.6):
        full = run_orbit(poly, MethodSpec.newton(), z0)
        bare = run_orbit(poly, MethodSpec.newton(), z0, record=False)
        assert (full.status, full.root, full.steps) == (bare.status, bare.root, bare.steps)
        assert bare.iterates == [] and bare.errors == []


# convergence order

def test_coc_exact_quadratic():
    assert estimate_convergence_order([1e-1, 1e-2, 1e-4, 1e-8]) == pytest.approx(2.0, abs=1e-12)


def test_coc_linear_sequence():
    errs = [0.5 * 0.8 ** k for k in range(10)]
    assert estimate_convergence_order(errs) == pytest.approx(1.0, abs=1e-9)


def test_coc_ignores_rounding_floor():
    assert estimate_convergence_order([1e-1, 1e-2, 1e-4, 1e-8, 1e-17, 0.0]) == pytest.approx(2.0)


@pytest.mark.parametrize("errs", [[1e-1, 1e-2], [1e-1, 0.0], [1e-2, 1e-1, 1.0], []])
def test_coc_insufficient(errs):
    with pytest.raises(InsufficientData):
        estimate_convergence_order(errs)


def test_coc_schroeder_quadratic_at_multiple_root():
    poly = TwoRootPolynomial(1, -1, 4, 1)
    res = run_orbit(poly, MethodSpec.schroeder(), 1.3)
    assert res.root is Root.A
    assert 1.8 <= estimate_convergence_order(res.errors) <= 2.2


def test_coc_newton_linear_at_multiple_root():
    poly = TwoRootPolynomial(1, -1, 4, 1)
    res = run_orbit(poly, MethodSpec.newton(), 1.3)
    assert res.root is Root.A
    assert 0.9 <= estimate_convergence_order(res.errors) <= 1.1


# invariants

@pytest.mark.parametrize("method", METHODS)
@given(mult, mult, coord, coord)
@settings(max_examples=25)
def test_roots_are_fixed(method, m, n, x, y):
    b = complex(x, y)
    assume(abs(b - 1) > 0.1)
    poly = TwoRootPolynomial(1, b, m, n)
    assert abs(step(poly, method, 1) - 1) <= 1e-14
    assert abs(step(poly, method, b) - b) <= 1e-14


@pytest.mark.parametrize("k", range(2, 10))
def test_newton_geometric_rate_on_power(k):
    res = run_orbit(TwoRootPolynomial(0, m=k), MethodSpec.newton(), 0.8 - 0.3j)
    ratios = [e1 / e0 for e0, e1 in zip(res.errors, res.errors[1:])]
    assert all(abs(r - (k - 1) / k) <= 1e-12 for r in ratios)


@given(st.floats(1e-6, 1e6), st.floats(0, 2 * math.pi), st.integers(1, 12))
def test_schroeder_exact_on_power(r, theta, k):
    z0 = cmath.rect(r, theta)
    assert abs(schroeder_step(TwoRootPolynomial(0, m=k), z0)) <= 1e-12 * abs(z0)


@given(coord, coord, mult, mult)
def test_schroeder_commutes_with_conjugation(x, y, m, n):
    poly = TwoRootPolynomial(1, -1, m, n)
    z = complex(x, y)
    try:
        w = schroeder_step(poly, z)
    except HitSingularity:
        return
    assert schroeder_step(poly, z.conjugate()) == w.conjugate()


@pytest.mark.parametrize("method", METHODS)
@given(coord, coord, mult, mult)
@settings(max_examples=30)
def test_root_swap_equivariance(method, x, y, m, n):
    poly = TwoRootPolynomial(1 + 0.5j, -1, m, n)
    z0 = complex(x, y)
    one = run_orbit(poly, method, z0)
    two = run_orbit(poly.swapped(), method, z0)
    assert one.iterates == two.iterates
    assert one.status is two.status
    if one.root is not None:
        assert two.root is Root(1 - one.root)


def test_method_parse():
    assert MethodSpec.parse("Halley") == MethodSpec.halley()
    assert MethodSpec.parse("chebyshev") == MethodSpec("chebyshev_halley", 0.0)
    assert MethodSpec.parse("schröder").kind.value == "schroeder"
    with pytest.raises(ValueError):
        MethodSpec.parse("secant")
    with pytest.raises(ValueError):
        MethodSpec("chebyshev_halley", math.inf)

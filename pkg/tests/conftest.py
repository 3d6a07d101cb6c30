import pytest

from schroeder.poly import TwoRootPolynomial

# filled by tests/test_acceptance.py, printed at the end of the run
ACCEPTANCE = []


def direct_derivatives(poly: TwoRootPolynomial, z: complex):
    """f, f', f'' by the product rule on the unreduced factors (independent oracle)."""
    a, b, m, n = poly.a, poly.b, poly.m, poly.n
    u, v = z - a, z - b
    if n == 0:
        return (u ** m, m * u ** (m - 1),
                m * (m - 1) * u ** (m - 2) if m >= 2 else 0j)

    def p(x, k):
        return x ** k if k >= 0 else 0j

    f = p(u, m) * p(v, n)
    f1 = m * p(u, m - 1) * p(v, n) + n * p(u, m) * p(v, n - 1)
    f2 = (m * (m - 1) * p(u, m - 2) * p(v, n) + 2 * m * n * p(u, m - 1) * p(v, n - 1)
          + n * (n - 1) * p(u, m) * p(v, n - 2))
    return f, f1, f2


@pytest.fixture
def derivs():
    return direct_derivatives


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE:
        terminalreporter.write_line(line)

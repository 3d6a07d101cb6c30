"""Ray-bisection check of the closed-form Julia set on every figure configuration.

Prints one line per configuration and exits non-zero if any deviation exceeds
the tolerance.
"""

import argparse
import sys

from schroeder import MethodSpec, TwoRootPolynomial
from schroeder.julia import julia_locus_general
from schroeder.validation import BoundaryParams, boundary_report

CONFIGS = [(2, 1, 1, -1), (5, 1, 1, -1), (8, 1, 1, -1), (6, 6, 1, -1), (7, 6, 1, -1),
           (8, 6, 1, -1), (4, 2, 1, -1), (6, 3, 1, -1), (2, 1, 1, 1j), (3, 3, 1j, 2)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rays", type=int, default=64)
    ap.add_argument("--tol", type=float, default=1e-5)
    args = ap.parse_args(argv)
    ok = True
    for m, n, a, b in CONFIGS:
        rep = boundary_report(TwoRootPolynomial(a, b, m, n), MethodSpec.schroeder(),
                              julia_locus_general(m, n, a, b), BoundaryParams(args.rays))
        good = rep["max_dev"] <= args.tol and not rep["failures"]
        ok &= good
        print(f"{'ok  ' if good else 'FAIL'} m={m} n={n} a={a} b={b}  "
              f"max_dev={rep['max_dev']:.2e} mean_dev={rep['mean_dev']:.2e}")
    return 0 if ok else 2


if __name__ == "__main__":
    sys.exit(main())

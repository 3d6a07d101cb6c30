"""Schroeder's root-finding method on (z - a)^m (z - b)^n: iteration maps,
conjugacies, closed-form Julia sets, basin rendering and empirical checks."""

from .basins import BasinGrid, Cell, Palette, Viewport, classify_grid, render_ppm
from .conjugacy import INF, R_mn, T_mn, affine_A, conjugacy_residual_T, moebius, moebius_inverse
from .iterators import (Method, MethodSpec, OrbitParams, OrbitResult, Root, Status,
                        chebyshev_halley_step, estimate_convergence_order, newton_step,
                        run_orbit, schroeder_step)
from .julia import (Circle, Line, hyperbola_check, julia_locus_general,
                    julia_locus_normalized, p_class_locus, signed_distance)
from .poly import TwoRootPolynomial, eval_f, eval_f_over_fprime, eval_Lf
from .validation import boundary_report, convergence_report, find_boundary_crossing

__version__ = "0.1.0"

"""Exact rational-point counting on plane curves and the determinant method."""

from .exact import (IntervalQ, PrimVec, closed, enumerate_S, height, lattice_x_values,
                    primitivize, rationals_of_height, s_count_and_sum)
from .curves import (BivariatePoly, Curve, DegenerateFiberError, DerivativeBound, Implicit,
                     PointQ, PolyGraph, PowGraph, derivative_bounds, enumerate_height_points,
                     enumerate_lattice_points, eval_exact, fibers_implicit, implicit_curve,
                     integer_root, point, poly_curve, pow_curve)
from .parsing import CurveSyntaxError, format_curve, parse_curve
from .linalg import (DECurve, QMatrix, de_determinant, denominator_bound,
                     interpolate_de_curve, lies_on_de_curve, monomial_matrix,
                     schwarz_bound_check, schwarz_poly_identity_check, select_independent,
                     vandermonde)
from .cover import (CoverCertificate, build_cover, certificate_from_json, certificate_to_json,
                    choose_degrees, delta_exponent, load_certificate, dump_certificate,
                    verify_cover)
from .jarnik import (JARNIK_CONSTANT, check_chain, collinearity_window_check, jarnik_extremal,
                     jarnik_upper_check, mu_lower_bound)
from .experiments import (CountSeries, FitResult, fit_exponent, fit_pairs, geometric_grid,
                          run_series)
from .svg import loglog_svg

__version__ = "0.1.0"

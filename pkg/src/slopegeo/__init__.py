"""Slope (Matsumoto) metrics ``F = alpha^2 / (alpha - beta)`` on explicit surfaces."""
from ._jit import HAVE_NUMBA
from .errors import (AmbiguousBranch, ConvexityViolation, DegenerateDenominator, DomainError,
                     DomainExit, NonConvexLimacon, QuadratureFailure, RangeError, StepFailure,
                     Unattainable, ZeroVector)
from .geodesics import (GeodesicState, GeodesicTrace, IntegratorOptions, clairaut_value,
                        initial_velocity, integrate_geodesic, turning_point_check, unit_normalize,
                        velocity_from_clairaut)
from .measures import (AreaReport, T_function, VolumeCoefficients, area, area_compare,
                       volume_coefficients, volume_coefficients_closed, volume_coefficients_quadrature)
from .metric import (ConvexityReport, Disk, Limacon, MetricSample, alpha_beta, b_norm,
                     convexity_check, hessian, limacon_point, okubo_norm, phi_quantities, slope_norm)
from .spray import (CovariantData, SprayTerms, ab_correction_terms, covariant_data, riemannian_spray,
                    slope_spray_closed, slope_spray_generic)
from .surfaces import (GraphSurface, Point2, SurfaceOfRevolution, Vec2, from_descriptor, gallery,
                       lookup, one_form_at, riemannian_metric_at)

__version__ = "0.1.0"

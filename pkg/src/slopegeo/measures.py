"""Busemann-Hausdorff and Holmes-Thompson areas of the slope metric.

In two dimensions both Finslerian area densities are multiples of the
Riemannian one, ``dV_BH = f(b) dV_alpha`` and ``dV_HT = g(b) dV_alpha``,
with coefficients that depend only on the pointwise norm ``b`` of the
slope one-form:

    f(b) = 2 / (2 + b^2)
    g(b) = (2 - 3 b^2) / (2 (1 - b^2)^(5/2))

``g`` is the exact value of ``(1/pi) int_0^pi T(b cos t) dt`` with
``T(s) = (1 - 3s + 2b^2) / (1 - s)^4``; it exceeds 1 for every ``b > 0``,
so Holmes-Thompson area is larger than Riemannian area for this metric.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import integrate

from .errors import ConvexityViolation, QuadratureFailure, RangeError
from .metric import HALF, convexity_check
from .surfaces import check_point

B_GUARD = 1e-12
QUAD_ABS_TOL = 1e-11

BH_LOWER = 8.0 / 9.0
HT_LOWER = 5.0 * math.sqrt(3.0) / 9.0
HT_BH_UPPER = 5.0 * math.sqrt(3.0) / 8.0


def _check_b(b):
    if not (0.0 <= b < HALF - B_GUARD):
        raise RangeError(f"b = {b} outside [0, 1/2)")


def T_function(s: float, b: float) -> float:
    """Holmes-Thompson integrand ``phi [(phi - s phi') + (b^2 - s^2) phi'']`` for n = 2."""
    _check_b(b)
    if abs(s) > b * (1.0 + 1e-15):
        raise RangeError(f"|s| = {abs(s)} exceeds b = {b}")
    return (1.0 - 3.0 * s + 2.0 * b * b) / (1.0 - s) ** 4


@dataclass
class VolumeCoefficients:
    b: float
    f: float
    g: float
    h: float
    f_quad: float = math.nan
    g_quad: float = math.nan


def _closed(b):
    b2 = b * b
    f = 2.0 / (2.0 + b2)
    g = (2.0 - 3.0 * b2) / (2.0 * (1.0 - b2) ** 2.5)
    return f, g


def volume_coefficients_closed(b: float) -> VolumeCoefficients:
    _check_b(b)
    f, g = _closed(b)
    return VolumeCoefficients(b, f, g, g / f)


def _quad(fun, a, bnd):
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, err = integrate.quad(fun, a, bnd, epsabs=QUAD_ABS_TOL, epsrel=0.0, limit=200)
        except integrate.IntegrationWarning as exc:
            raise QuadratureFailure(str(exc)) from exc
    if err > QUAD_ABS_TOL:
        raise QuadratureFailure(f"error estimate {err:.3g} above {QUAD_ABS_TOL}")
    return val


def volume_coefficients_quadrature(b: float) -> tuple[float, float]:
    """``(f, g)`` from their defining integrals over ``t in [0, pi]``."""
    _check_b(b)
    if b == 0.0:
        return 1.0, 1.0
    inv_phi2 = _quad(lambda t: (1.0 - b * math.cos(t)) ** 2, 0.0, math.pi)
    t_int = _quad(lambda t: T_function(b * math.cos(t), b), 0.0, math.pi)
    return math.pi / inv_phi2, t_int / math.pi


def volume_coefficients(b: float) -> VolumeCoefficients:
    vc = volume_coefficients_closed(b)
    vc.f_quad, vc.g_quad = volume_coefficients_quadrature(b)
    return vc


def _density_factor(measure):
    if measure == "alpha":
        return lambda b: np.ones_like(b)
    if measure == "BH":
        return lambda b: 2.0 / (2.0 + b * b)
    if measure == "HT":
        return lambda b: (2.0 - 3.0 * b * b) / (2.0 * (1.0 - b * b) ** 2.5)
    raise ValueError(f"unknown measure {measure!r}")


def _region_checks(surface, region, measure):
    if surface.kind == "revolution":
        u0, u1, v0, v1 = region
        check_point(surface, (u0, v0))
        check_point(surface, (u1, v1))
        conv_region = (min(u0, u1), max(u0, u1))
    else:
        x0, x1, y0, y1 = region
        check_point(surface, (x0, y0))
        check_point(surface, (x1, y1))
        conv_region = (x0, x1, y0, y1)
    if measure != "alpha" and conv_region[0] != conv_region[1]:
        rep = convexity_check(surface, conv_region)
        if not rep.holds:
            raise ConvexityViolation(f"slope metric not strongly convex on region (b = {rep.worst_b:.6g})")


def area_with_error(surface, region, measure: str = "alpha") -> tuple[float, float]:
    """Area of a chart rectangle and an absolute quadrature error estimate.

    ``region`` is ``(u0, u1, v0, v1)`` on surfaces of revolution and
    ``(x0, x1, y0, y1)`` on graphs.
    """
    sigma = _density_factor(measure)
    _region_checks(surface, region, measure)
    if surface.kind == "revolution":
        u0, u1, v0, v1 = map(float, region)
        if u0 == u1 or v0 == v1:
            return 0.0, 0.0

        def integrand(u):
            m, m1, _ = surface.jet(u)
            w = 1.0 + m1 * m1
            return sigma(1.0 / math.sqrt(w)) * math.sqrt(w) * m

        val, err = integrate.quad(integrand, u0, u1, epsabs=0.0, epsrel=1e-11, limit=200)
        return val * (v1 - v0), err * abs(v1 - v0)

    x0, x1, y0, y1 = map(float, region)
    if x0 == x1 or y0 == y1:
        return 0.0, 0.0

    def integrand(y, x):
        fx, fy = surface.grad(x, y)
        g2 = float(fx) ** 2 + float(fy) ** 2
        return sigma(math.sqrt(g2 / (1.0 + g2))) * math.sqrt(1.0 + g2)

    val, err = integrate.dblquad(integrand, x0, x1, y0, y1, epsabs=0.0, epsrel=1e-10)
    return val, err


def area(surface, region, measure: str = "alpha") -> float:
    return area_with_error(surface, region, measure)[0]


@dataclass
class AreaReport:
    region: tuple
    area_alpha: float
    area_BH: float
    area_HT: float
    ratios: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    quad_error: float = 0.0

    @property
    def all_verdicts(self) -> bool:
        return all(self.verdicts.values())

    def to_json(self) -> dict:
        d = asdict(self)
        d["region"] = [float(c) for c in self.region]
        return d


def area_compare(surface, region, slack: float = 1e-6) -> AreaReport:
    """Riemannian, BH and HT areas of ``region`` with inequality verdicts.

    The verdicts test the chain ``BH < HT < alpha`` and the ratio bounds
    ``BH/alpha in [8/9, 1]``, ``HT/alpha in [5 sqrt3/9, 1]`` and
    ``HT/BH in [1, 5 sqrt3/8]``, each widened by ``slack``.
    """
    a, ea = area_with_error(surface, region, "alpha")
    bh, eb = area_with_error(surface, region, "BH")
    ht, eh = area_with_error(surface, region, "HT")
    err = ea + eb + eh
    if a == 0.0:
        ratios = {"BH/alpha": None, "HT/alpha": None, "HT/BH": None}
        verdicts = dict.fromkeys(("BH<HT<alpha", "BH/alpha", "HT/alpha", "HT/BH"), True)
    else:
        r_ba, r_ha, r_hb = bh / a, ht / a, ht / bh
        ratios = {"BH/alpha": r_ba, "HT/alpha": r_ha, "HT/BH": r_hb}
        verdicts = {
            "BH<HT<alpha": bool(bh + err < ht and ht + err < a),
            "BH/alpha": bool(BH_LOWER - slack <= r_ba <= 1.0 + slack),
            "HT/alpha": bool(HT_LOWER - slack <= r_ha <= 1.0 + slack),
            "HT/BH": bool(1.0 - slack <= r_hb <= HT_BH_UPPER + slack),
        }
    return AreaReport(tuple(region), a, bh, ht, ratios, verdicts, err)

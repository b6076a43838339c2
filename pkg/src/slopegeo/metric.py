"""The slope metric ``F = alpha^2 / (alpha - beta)`` on a surface.

Normalization follows the usual convention ``c = a = 1`` on the metric; a
general limacon ``r = c + a cos(theta)`` is kept only in :class:`Limacon`.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConvexityViolation, NonConvexLimacon, RangeError, ZeroVector
from .surfaces import check_point, one_form_at, riemannian_metric_at

HALF = 0.5
S_GUARD = 1e-12
DEFAULT_GRID = 201
DEFAULT_TOL_MARGIN = 1e-9


@dataclass(frozen=True)
class MetricSample:
    alpha: float
    beta: float
    s: float
    b2: float
    phi: float
    phi1: float
    phi2: float
    rho: float
    rho0: float
    rho1: float
    g: np.ndarray
    F: float


@dataclass(frozen=True)
class Limacon:
    """Indicatrix ``r = c + a cos(theta)``; ``c`` ground speed, ``a = (g/2) sin(eps)``."""

    c: float
    a: float

    @property
    def strongly_convex(self) -> bool:
        return self.c > 2.0 * self.a


class Disk(NamedTuple):
    cx: float
    cy: float
    r: float


@dataclass
class ConvexityReport:
    holds: bool
    worst_b: float
    worst_point: tuple[float, float]
    margin: float

    def to_json(self) -> dict:
        d = asdict(self)
        d["worst_point"] = [float(c) for c in self.worst_point]
        return d


def _vec(y) -> np.ndarray:
    y = np.asarray(y, dtype=float).reshape(2)
    if not np.any(y):
        raise ZeroVector("direction must be non-zero")
    return y


def alpha_beta(surface, p, y) -> tuple[float, float]:
    y = _vec(y)
    a = riemannian_metric_at(surface, p)
    b = one_form_at(surface, p)
    return math.sqrt(y @ a @ y), float(b @ y)


def b_norm(surface, p) -> float:
    """Riemannian length of the slope one-form at ``p``."""
    check_point(surface, p)
    if surface.kind == "revolution":
        m1 = surface.jet(p[0])[1]
        return 1.0 / math.sqrt(1.0 + m1 * m1)
    fx, fy = (float(t) for t in surface.grad(p[0], p[1]))
    g2 = fx * fx + fy * fy
    return math.sqrt(g2 / (1.0 + g2))


def _require_convex(surface, p) -> float:
    b = b_norm(surface, p)
    if b >= HALF - S_GUARD:
        raise ConvexityViolation(f"b = {b:.6g} >= 1/2 at {tuple(p)} on {surface.name}")
    return b


def slope_norm(surface, p, y) -> float:
    _require_convex(surface, p)
    al, be = alpha_beta(surface, p, y)
    return al * al / (al - be)


def phi_quantities(s: float) -> tuple[float, float, float, float, float, float]:
    """``(phi, phi', phi'', rho, rho0, rho1)`` for ``phi(s) = 1/(1-s)``.

    The rho's use their closed forms in ``s``; :func:`phi_chain` gives the
    generic composition from the phi derivatives.
    """
    if not s < HALF - S_GUARD:
        raise RangeError(f"s = {s} outside admissible range s < 1/2")
    return _phi_closed(s)


def _phi_closed(s):
    d = 1.0 - s
    phi = 1.0 / d
    phi1 = phi * phi
    phi2 = 2.0 * phi1 * phi
    d4 = d ** 4
    return phi, phi1, phi2, (1.0 - 2.0 * s) / d ** 3, 3.0 / d4, (1.0 - 4.0 * s) / d4


def phi_chain(s, phi, phi1, phi2) -> tuple[float, float, float]:
    """Generic ``(rho, rho0, rho1)`` of an (alpha, beta)-metric from phi and its derivatives."""
    rho = phi * phi - s * phi * phi1
    rho0 = phi * phi2 + phi1 * phi1
    rho1 = -s * rho0 + phi * phi1
    return rho, rho0, rho1


def fundamental_tensor(a, b, y) -> np.ndarray:
    """``g_ij = 1/2 d^2 F^2 / dy^i dy^j`` from ``a_ij``, ``b_i`` and ``y``.

    No admissibility check: used directly to study degeneracy.
    """
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    y = np.asarray(y, float)
    ay = a @ y
    al = math.sqrt(y @ ay)
    s = float(b @ y) / al
    _, _, _, rho, rho0, rho1 = _phi_closed(s)
    ai = ay / al
    cross = np.outer(b, ai)
    return rho * a + rho0 * np.outer(b, b) + rho1 * (cross + cross.T) - s * rho1 * np.outer(ai, ai)


def hessian(surface, p, y) -> np.ndarray:
    _require_convex(surface, p)
    y = _vec(y)
    a = riemannian_metric_at(surface, p)
    b = one_form_at(surface, p)
    s = float(b @ y) / math.sqrt(y @ a @ y)
    if not s < HALF - S_GUARD:
        raise ConvexityViolation(f"s = {s} >= 1/2")
    return fundamental_tensor(a, b, y)


def sample(surface, p, y) -> MetricSample:
    """All pointwise metric quantities at ``(p, y)``."""
    b = _require_convex(surface, p)
    y = _vec(y)
    a = riemannian_metric_at(surface, p)
    bc = one_form_at(surface, p)
    al = math.sqrt(y @ a @ y)
    be = float(bc @ y)
    s = be / al
    q = phi_quantities(s)
    return MetricSample(al, be, s, b * b, *q, g=fundamental_tensor(a, bc, y), F=al * q[0])


# -- convexity certification ---------------------------------------------------

def _golden_max(fun, lo, hi, iters=80):
    r = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - r * (hi - lo)
    x2 = lo + r * (hi - lo)
    f1, f2 = fun(x1), fun(x2)
    for _ in range(iters):
        if hi - lo < 1e-15 * (1.0 + abs(lo)):
            break
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + r * (hi - lo)
            f2 = fun(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - r * (hi - lo)
            f1 = fun(x1)
    return (x1, f1) if f1 > f2 else (x2, f2)


def _b2_vec(surface):
    if surface.kind == "revolution":
        def b2(u, _t=None):
            m1 = surface.profile_d1(u)
            return 1.0 / (1.0 + m1 * m1)
        return b2

    def b2(x, y):
        fx, fy = surface.grad(x, y)
        g2 = np.asarray(fx) ** 2 + np.asarray(fy) ** 2
        return g2 / (1.0 + g2)
    return b2


def convexity_check(surface, region=None, grid=DEFAULT_GRID, tol_margin=DEFAULT_TOL_MARGIN) -> ConvexityReport:
    """Certify ``b < 1/2`` over ``region`` by grid sampling plus local refinement.

    ``region`` is ``(u0, u1)`` for revolution surfaces and either a rectangle
    ``(x0, x1, y0, y1)`` or a :class:`Disk` for graphs. ``None`` means the
    whole domain.
    """
    b2 = _b2_vec(surface)
    if surface.kind == "revolution":
        u0, u1 = surface.domain if region is None else region
        check_point(surface, (u0, 0.0))
        check_point(surface, (u1, 0.0))
        us = np.linspace(u0, u1, grid)
        vals = b2(us)
        i = int(np.argmax(vals))
        lo, hi = us[max(i - 1, 0)], us[min(i + 1, grid - 1)]
        ur, vr = _golden_max(lambda u: float(b2(u)), lo, hi)
        if vr > vals[i]:
            worst, wb2 = (float(ur), 0.0), vr
        else:
            worst, wb2 = (float(us[i]), 0.0), float(vals[i])
    else:
        if region is None:
            region = surface.domain
        if isinstance(region, Disk):
            cx, cy, R = region

            def to_xy(s, t):
                return cx + R * s * np.cos(2 * np.pi * t), cy + R * s * np.sin(2 * np.pi * t)
            for ang in np.linspace(0, 2 * np.pi, 16, endpoint=False):
                check_point(surface, (cx + R * math.cos(ang), cy + R * math.sin(ang)))
        else:
            x0, x1, y0, y1 = region
            check_point(surface, (x0, y0))
            check_point(surface, (x1, y1))

            def to_xy(s, t):
                return x0 + s * (x1 - x0), y0 + t * (y1 - y0)
        ss = np.linspace(0.0, 1.0, grid)
        S, T = np.meshgrid(ss, ss, indexing="ij")
        vals = b2(*to_xy(S, T))
        i, j = np.unravel_index(int(np.argmax(vals)), vals.shape)
        best_s, best_t, best = ss[i], ss[j], float(vals[i, j])
        slo, shi = ss[max(i - 1, 0)], ss[min(i + 1, grid - 1)]
        tlo, thi = ss[max(j - 1, 0)], ss[min(j + 1, grid - 1)]
        for _ in range(3):
            s_new, v = _golden_max(lambda s: float(b2(*to_xy(s, best_t))), slo, shi)
            if v > best:
                best_s, best = s_new, v
            t_new, v = _golden_max(lambda t: float(b2(*to_xy(best_s, t))), tlo, thi)
            if v > best:
                best_t, best = t_new, v
        wx, wy = to_xy(best_s, best_t)
        worst, wb2 = (float(wx), float(wy)), best
    wb = math.sqrt(wb2)
    margin = HALF - wb
    return ConvexityReport(bool(wb < HALF - tol_margin), wb, worst, margin)


# -- indicatrix ----------------------------------------------------------------

def okubo_norm(lim: Limacon, X, Y) -> float:
    """Minkowski norm whose unit circle is the limacon ``lim``."""
    if not lim.strongly_convex:
        raise NonConvexLimacon(f"c = {lim.c} <= 2a = {2 * lim.a}")
    r = math.hypot(X, Y)
    if r == 0.0:
        raise ZeroVector("(X, Y) must be non-zero")
    return r * r / (lim.c * r + lim.a * X)


def limacon_point(lim: Limacon, theta: float) -> tuple[float, float]:
    r = lim.c + lim.a * math.cos(theta)
    return r * math.cos(theta), r * math.sin(theta)


def limacon_at(surface, p) -> Limacon:
    """Indicatrix of the slope metric at ``p`` in the downhill orthonormal frame."""
    return Limacon(1.0, b_norm(surface, p))


def frame_coordinates(surface, p, y) -> tuple[float, float]:
    """Components ``(X, Y)`` of ``y`` in the orthonormal frame ``(downhill, level)``."""
    y = _vec(y)
    a = riemannian_metric_at(surface, p)
    bc = one_form_at(surface, p)
    if surface.kind == "revolution":
        m, m1, _ = surface.jet(p[0])
        return -math.sqrt(1.0 + m1 * m1) * y[0], m * y[1]
    b = b_norm(surface, p)
    if b == 0.0:
        return float(y[0]), float(y[1])
    X = -float(bc @ y) / b
    e2 = np.array([-bc[1], bc[0]]) / math.hypot(*bc)
    return X, float(y @ a @ e2)

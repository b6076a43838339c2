"""Geodesic spray of the slope metric on a surface of revolution.

Spray coefficients follow the convention ``x''^i + 2 G^i = 0``. Two routes
are provided for the slope spray: :func:`slope_spray_closed` (the reduced
closed form, also used by the integrator kernels) and
:func:`slope_spray_generic`, which assembles the general (alpha, beta)
formula from the phi-chain and the covariant derivative of ``beta``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .errors import DegenerateDenominator, DomainError
from .metric import HALF, S_GUARD, _vec, b_norm
from .surfaces import check_point

DENOM_TOL = 1e-14


@dataclass(frozen=True)
class CovariantData:
    """Covariant derivative ``b_{i|j}`` of the one-form ``du``."""

    b11: float
    b22: float
    b12: float
    r00_coeffs: tuple[float, float]
    s_vanishes: bool

    def r00(self, y) -> float:
        c1, c2 = self.r00_coeffs
        return c1 * y[0] * y[0] + c2 * y[1] * y[1]


@dataclass(frozen=True)
class SprayTerms:
    Q: float
    Theta: float
    Psi: float


def _revolution(surface, p):
    if surface.kind != "revolution":
        raise TypeError("spray operations are defined for surfaces of revolution only")
    check_point(surface, p)
    return surface.jet(p[0])


def riemannian_spray(surface, p, y) -> tuple[float, float]:
    m, m1, m2 = _revolution(surface, p)
    if m == 0.0:
        raise DomainError("profile vanishes")
    y = np.asarray(y, float)
    return K.riemann_spray(m, m1, m2, y[0], y[1])


def covariant_data(surface, p) -> CovariantData:
    m, m1, m2 = _revolution(surface, p)
    w = 1.0 + m1 * m1
    b11 = -m1 * m2 / w
    b22 = m * m1 / w
    return CovariantData(b11, b22, 0.0, (b11, b22), True)


def _ab(surface, p, y):
    m, m1, _ = _revolution(surface, p)
    y = _vec(y)
    al, be = K.alpha_beta(m, m1, y[0], y[1])
    return y, al, be, 1.0 / (1.0 + m1 * m1)


def ab_correction_terms(surface, p, y) -> SprayTerms:
    """Slope-specialized ``Q``, ``Theta``, ``Psi``."""
    y, al, be, b2 = _ab(surface, p, y)
    den = (2.0 * b2 + 1.0) * al - 3.0 * be
    if den <= DENOM_TOL * al:
        raise DegenerateDenominator(f"(2b^2+1)alpha - 3beta = {den}")
    s = be / al
    psi = al / den
    return SprayTerms(1.0 / (1.0 - 2.0 * s), (al - 4.0 * be) / (2.0 * den), psi)


def generic_terms(s: float, b2: float, phi, phi1, phi2) -> SprayTerms:
    """``Q``, ``Theta``, ``Psi`` of an arbitrary (alpha, beta)-metric."""
    base = phi - s * phi1
    den = base + (b2 - s * s) * phi2
    if abs(den) <= DENOM_TOL:
        raise DegenerateDenominator("phi - s phi' + (b^2 - s^2) phi'' vanishes")
    Q = phi1 / base
    Theta = (phi * phi1 - s * (phi * phi2 + phi1 * phi1)) / (2.0 * phi * den)
    Psi = phi2 / (2.0 * den)
    return SprayTerms(Q, Theta, Psi)


def slope_spray_closed(surface, p, y) -> tuple[float, float]:
    m, m1, m2 = _revolution(surface, p)
    y = _vec(y)
    G1, G2 = K.slope_spray(m, m1, m2, y[0], y[1])
    if math.isnan(G1):
        raise DegenerateDenominator("(2b^2+1)alpha - 3beta <= 0")
    return G1, G2


def slope_spray_generic(surface, p, y, corrections: bool = True) -> tuple[float, float]:
    """General (alpha, beta) spray formula evaluated for ``phi(s) = 1/(1-s)``.

    With ``corrections=False`` the Riemannian spray is returned.
    """
    m, m1, m2 = _revolution(surface, p)
    y = _vec(y)
    G1a, G2a = K.riemann_spray(m, m1, m2, y[0], y[1])
    if not corrections:
        return G1a, G2a
    al, be = K.alpha_beta(m, m1, y[0], y[1])
    s = be / al
    b = b_norm(surface, p)
    if not s < HALF - S_GUARD:
        raise DegenerateDenominator(f"s = {s} >= 1/2")
    phi = 1.0 / (1.0 - s)
    terms = generic_terms(s, b * b, phi, phi * phi, 2.0 * phi ** 3)
    cov = covariant_data(surface, p)
    # s^i_0 = s_0 = 0 since b_{1|2} = b_{2|1} = 0
    si0 = (0.0, 0.0)
    s0 = 0.0
    r00 = cov.r00(y)
    bup = (1.0 / (1.0 + m1 * m1), 0.0)  # b^i = a^{ij} b_j
    lam = -2.0 * terms.Q * al * s0 + r00
    G = [Ga + al * terms.Q * si + lam * (terms.Theta * yi / al + terms.Psi * bi)
         for Ga, si, yi, bi in zip((G1a, G2a), si0, y, bup)]
    return G[0], G[1]


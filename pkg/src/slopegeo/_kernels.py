"""Scalar hot kernels for revolution surfaces.

Everything here is written so that it compiles under ``numba.njit`` and also
runs unchanged as plain Python when numba is disabled (see ``_jit``).
Profiles are selected by an integer family code plus a small float64
parameter array; no Python callables cross the kernel boundary.
"""
import math

import numpy as np

from ._jit import njit

# profile family codes
SQRT = 0  # m = sqrt(k u^2 - c)
LOG = 1  # m = A sqrt(-2 ln(k u^2))
CONE = 2  # m = k u + c

# integrator status codes
OK = 0
EXIT_DOMAIN = 1
EXIT_STEP = 2
EXIT_BUFFER = 3


@njit
def profile(code, par, u):
    """Return ``(m, m', m'')`` at ``u``."""
    if code == SQRT:
        k = par[0]
        c = par[1]
        m = math.sqrt(k * u * u - c)
        return m, k * u / m, -k * c / (m * m * m)
    elif code == LOG:
        A = par[0]
        k = par[1]
        L = -2.0 * math.log(k * u * u)
        sL = math.sqrt(L)
        return A * sL, -2.0 * A / (u * sL), 2.0 * A * (L - 2.0) / (u * u * L * sL)
    else:
        return par[0] * u + par[1], par[0], 0.0


@njit
def alpha_beta(m, m1, y1, y2):
    return math.sqrt((1.0 + m1 * m1) * y1 * y1 + m * m * y2 * y2), y1


@njit
def slope_F(m, m1, y1, y2):
    a, b = alpha_beta(m, m1, y1, y2)
    return a * a / (a - b)


@njit
def riemann_spray(m, m1, m2, y1, y2):
    """Spray coefficients of the induced metric (without the factor 2)."""
    w = 1.0 + m1 * m1
    G1 = 0.5 * (m1 * m2 / w * y1 * y1 - m * m1 / w * y2 * y2)
    G2 = m1 / m * y1 * y2
    return G1, G2


@njit
def slope_spray(m, m1, m2, y1, y2):
    """Closed-form slope-metric spray ``(G1, G2)``.

    Returns NaN pair if the denominator ``(2b^2+1)alpha - 3beta`` is not
    positive.
    """
    G1a, G2a = riemann_spray(m, m1, m2, y1, y2)
    w = 1.0 + m1 * m1
    a = math.sqrt(w * y1 * y1 + m * m * y2 * y2)
    beta = y1
    b2 = 1.0 / w
    den = a * ((2.0 * b2 + 1.0) * a - 3.0 * beta)
    if not den > 0.0:
        return math.nan, math.nan
    G1 = G1a * (a - 2.0 * beta) ** 2 / den
    if y2 == 0.0:
        G2 = 0.0
    else:
        G2 = G2a - G1a * (a - 4.0 * beta) * y2 / den
    return G1, G2


@njit
def clairaut(m, m1, y1, y2):
    """``rho * m^2 * dv`` with ``rho = alpha^2 (alpha - 2 beta) / (alpha - beta)^3``."""
    a, b = alpha_beta(m, m1, y1, y2)
    d = a - b
    return a * a * (a - 2.0 * b) / (d * d * d) * m * m * y2


@njit
def rhs(code, par, finsler, u, du, dv):
    m, m1, m2 = profile(code, par, u)
    if finsler:
        G1, G2 = slope_spray(m, m1, m2, du, dv)
    else:
        G1, G2 = riemann_spray(m, m1, m2, du, dv)
    return -2.0 * G1, -2.0 * G2


@njit
def speed(code, par, finsler, u, du, dv):
    m, m1, _ = profile(code, par, u)
    if finsler:
        return slope_F(m, m1, du, dv)
    return math.sqrt((1.0 + m1 * m1) * du * du + m * m * dv * dv)


@njit
def rk4_run(code, par, finsler, y0, s0, h, n_steps, umin, umax, renorm_every, out):
    """Fixed-step RK4. ``out`` rows are ``(s, u, v, du, dv)``.

    Returns ``(n_rows, status, max_speed_drift)``.
    """
    u, v, du, dv = y0[0], y0[1], y0[2], y0[3]
    s = s0
    out[0, 0] = s
    out[0, 1] = u
    out[0, 2] = v
    out[0, 3] = du
    out[0, 4] = dv
    drift = 0.0
    cap = out.shape[0]
    for i in range(n_steps):
        if i + 2 > cap:
            return i + 1, EXIT_BUFFER, drift
        a1, b1 = rhs(code, par, finsler, u, du, dv)
        k1u, k1v, k1du, k1dv = du, dv, a1, b1
        uu = u + 0.5 * h * k1u
        a2, b2 = rhs(code, par, finsler, uu, du + 0.5 * h * k1du, dv + 0.5 * h * k1dv)
        k2u, k2v, k2du, k2dv = du + 0.5 * h * k1du, dv + 0.5 * h * k1dv, a2, b2
        uu = u + 0.5 * h * k2u
        a3, b3 = rhs(code, par, finsler, uu, du + 0.5 * h * k2du, dv + 0.5 * h * k2dv)
        k3u, k3v, k3du, k3dv = du + 0.5 * h * k2du, dv + 0.5 * h * k2dv, a3, b3
        uu = u + h * k3u
        a4, b4 = rhs(code, par, finsler, uu, du + h * k3du, dv + h * k3dv)
        k4u, k4v, k4du, k4dv = du + h * k3du, dv + h * k3dv, a4, b4
        nu_ = u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        if not (nu_ > umin and nu_ < umax):
            return i + 1, EXIT_DOMAIN, drift
        v = v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        du = du + h / 6.0 * (k1du + 2.0 * k2du + 2.0 * k3du + k4du)
        dv = dv + h / 6.0 * (k1dv + 2.0 * k2dv + 2.0 * k3dv + k4dv)
        u = nu_
        s = s0 + (i + 1) * h
        if renorm_every > 0 and (i + 1) % renorm_every == 0:
            F = speed(code, par, finsler, u, du, dv)
            drift = max(drift, abs(F - 1.0))
            du /= F
            dv /= F
        out[i + 1, 0] = s
        out[i + 1, 1] = u
        out[i + 1, 2] = v
        out[i + 1, 3] = du
        out[i + 1, 4] = dv
    return n_steps + 1, OK, drift


# Dormand-Prince 5(4)
_C2, _C3, _C4, _C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
_A61, _A62, _A63, _A64, _A65 = (
    9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0)
_B1, _B3, _B4, _B5, _B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
_E1, _E3, _E4, _E5, _E6, _E7 = (
    71.0 / 57600.0, -71.0 / 16695.0, 71.0 / 1920.0, -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)


@njit
def _deriv(code, par, finsler, y, k):
    a, b = rhs(code, par, finsler, y[0], y[2], y[3])
    k[0] = y[2]
    k[1] = y[3]
    k[2] = a
    k[3] = b


@njit
def dopri_run(code, par, finsler, y0, s0, s_end, h0, tol, max_steps,
              umin, umax, renorm_every, out):
    """Adaptive Dormand-Prince 5(4) from ``s0`` to ``s_end``.

    Every accepted step is written to ``out``. Returns
    ``(n_rows, status, n_accepted, n_rejected, max_speed_drift, h_last)``.
    """
    y = y0.copy()
    yn = np.empty(4)
    yt = np.empty(4)
    k = np.empty((7, 4))
    s = s0
    h = min(h0, s_end - s0)
    row = 0
    out[0, 0] = s
    out[0, 1:5] = y
    row = 1
    cap = out.shape[0]
    n_acc = 0
    n_rej = 0
    drift = 0.0
    hmin = 1e-14
    _deriv(code, par, finsler, y, k[0])
    while s < s_end:
        if n_acc + n_rej >= max_steps:
            return row, EXIT_STEP, n_acc, n_rej, drift, h
        if row >= cap:
            return row, EXIT_BUFFER, n_acc, n_rej, drift, h
        if s + h > s_end:
            h = s_end - s
        for j in range(4):
            yt[j] = y[j] + h * _A21 * k[0, j]
        _deriv(code, par, finsler, yt, k[1])
        for j in range(4):
            yt[j] = y[j] + h * (_A31 * k[0, j] + _A32 * k[1, j])
        _deriv(code, par, finsler, yt, k[2])
        for j in range(4):
            yt[j] = y[j] + h * (_A41 * k[0, j] + _A42 * k[1, j] + _A43 * k[2, j])
        _deriv(code, par, finsler, yt, k[3])
        for j in range(4):
            yt[j] = y[j] + h * (_A51 * k[0, j] + _A52 * k[1, j] + _A53 * k[2, j] + _A54 * k[3, j])
        _deriv(code, par, finsler, yt, k[4])
        for j in range(4):
            yt[j] = y[j] + h * (_A61 * k[0, j] + _A62 * k[1, j] + _A63 * k[2, j]
                                + _A64 * k[3, j] + _A65 * k[4, j])
        _deriv(code, par, finsler, yt, k[5])
        for j in range(4):
            yn[j] = y[j] + h * (_B1 * k[0, j] + _B3 * k[2, j] + _B4 * k[3, j]
                                + _B5 * k[4, j] + _B6 * k[5, j])
        _deriv(code, par, finsler, yn, k[6])
        err = 0.0
        for j in range(4):
            e = h * (_E1 * k[0, j] + _E3 * k[2, j] + _E4 * k[3, j] + _E5 * k[4, j]
                     + _E6 * k[5, j] + _E7 * k[6, j])
            sc = tol * (1.0 + max(abs(y[j]), abs(yn[j])))
            err += (e / sc) ** 2
        err = math.sqrt(err / 4.0)
        if not (err == err):
            # NaN: a stage left the profile's natural domain
            if not (yn[0] > umin and yn[0] < umax) and h <= hmin:
                return row, EXIT_DOMAIN, n_acc, n_rej, drift, h
            n_rej += 1
            h *= 0.25
            if h < hmin:
                return row, EXIT_STEP, n_acc, n_rej, drift, h
            continue
        if err <= 1.0:
            if not (yn[0] > umin and yn[0] < umax):
                return row, EXIT_DOMAIN, n_acc, n_rej, drift, h
            s = s + h
            n_acc += 1
            for j in range(4):
                y[j] = yn[j]
                k[0, j] = k[6, j]
            if renorm_every > 0 and n_acc % renorm_every == 0:
                F = speed(code, par, finsler, y[0], y[2], y[3])
                drift = max(drift, abs(F - 1.0))
                y[2] /= F
                y[3] /= F
                _deriv(code, par, finsler, y, k[0])
            out[row, 0] = s
            out[row, 1:5] = y
            row += 1
            fac = 0.9 * err ** -0.2 if err > 0.0 else 5.0
            h_next = h * min(5.0, max(0.2, fac))
            if s < s_end:
                h = h_next
        else:
            n_rej += 1
            h = h * max(0.1, 0.9 * err ** -0.25)
            if h < hmin:
                return row, EXIT_STEP, n_acc, n_rej, drift, h
    return row, OK, n_acc, n_rej, drift, h


@njit
def clairaut_rows(code, par, rows):
    """Slope Clairaut values for an ``(n, 5)`` array of ``(s, u, v, du, dv)``."""
    n = rows.shape[0]
    res = np.empty(n)
    for i in range(n):
        m, m1, _ = profile(code, par, rows[i, 1])
        res[i] = clairaut(m, m1, rows[i, 3], rows[i, 4])
    return res


@njit
def speed_rows(code, par, finsler, rows):
    n = rows.shape[0]
    res = np.empty(n)
    for i in range(n):
        res[i] = speed(code, par, finsler, rows[i, 1], rows[i, 3], rows[i, 4])
    return res


@njit
def slope_spray_batch(code, par, u, y):
    """Closed spray at many ``(u, y)``; ``y`` has shape ``(n, 2)``."""
    n = u.shape[0]
    res = np.empty((n, 2))
    for i in range(n):
        m, m1, m2 = profile(code, par, u[i])
        g1, g2 = slope_spray(m, m1, m2, y[i, 0], y[i, 1])
        res[i, 0] = g1
        res[i, 1] = g2
    return res

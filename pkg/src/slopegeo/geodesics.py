"""Unit-speed geodesics of the slope metric on surfaces of revolution.

The state is ``(u, v, du/ds, dv/ds)`` integrated in arclength. Two metrics
are supported: ``"finsler"`` (slope metric, arclength measured by ``F``)
and ``"riemannian"`` (the induced metric, for comparison). The numeric
loops live in :mod:`slopegeo._kernels`.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, field
from typing import Literal

import numpy as np
from scipy.optimize import brentq

from . import _kernels as K
from .errors import AmbiguousBranch, DomainExit, StepFailure, Unattainable, ZeroVector
from .metric import _require_convex, _vec
from .surfaces import check_point

CSV_COLUMNS = ("s", "u", "v", "du", "dv", "F", "nu_F")
UNIT_TOL = 1e-6
_CHUNK = 1 << 16


@dataclass(frozen=True)
class GeodesicState:
    u: float
    v: float
    du: float
    dv: float
    s: float = 0.0


@dataclass(frozen=True)
class IntegratorOptions:
    """Integrator settings; ``renormalize_every = 0`` disables rescaling to unit speed."""

    method: Literal["rk4_fixed", "rk45_adaptive"] = "rk45_adaptive"
    step: float = 1e-3
    tol: float = 1e-10
    max_steps: int = 10_000_000
    renormalize_every: int = 100
    metric: Literal["finsler", "riemannian"] = "finsler"

    def __post_init__(self):
        if not self.step > 0 or not self.tol > 0:
            raise ValueError("step and tol must be positive")
        if self.method not in ("rk4_fixed", "rk45_adaptive"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.metric not in ("finsler", "riemannian"):
            raise ValueError(f"unknown metric {self.metric!r}")
        if self.renormalize_every < 0 or self.max_steps < 1:
            raise ValueError("renormalize_every must be >= 0 and max_steps >= 1")


@dataclass
class GeodesicTrace:
    """Integrated geodesic.

    ``rows`` has columns ``(s, u, v, du, dv)``. ``clairaut`` holds the slope
    Clairaut value ``rho m^2 dv/ds`` per row and ``clairaut_riem`` the
    Riemannian one ``m^2 dv/ds``.
    """

    rows: np.ndarray
    clairaut: np.ndarray
    clairaut_riem: np.ndarray
    speed: np.ndarray
    exit_reason: str
    metric: str
    stats: dict = field(default_factory=dict)

    @property
    def states(self) -> list[GeodesicState]:
        return [GeodesicState(r[1], r[2], r[3], r[4], r[0]) for r in self.rows]

    @property
    def s(self):
        return self.rows[:, 0]

    @property
    def u(self):
        return self.rows[:, 1]

    @property
    def v(self):
        return self.rows[:, 2]

    @property
    def du(self):
        return self.rows[:, 3]

    @property
    def dv(self):
        return self.rows[:, 4]

    @property
    def conserved(self) -> np.ndarray:
        """Clairaut quantity of the metric the trace was integrated in."""
        return self.clairaut if self.metric == "finsler" else self.clairaut_riem

    def to_csv(self, fh=None) -> str:
        """CSV with columns ``s,u,v,du,dv,F,nu_F``; 17 significant digits."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r, F, nu in zip(self.rows, self.speed, self.conserved):
            w.writerow([format(float(x), ".17g") for x in (*r, F, nu)])
        text = buf.getvalue()
        if fh is not None:
            fh.write(text)
        return text

    def to_json(self) -> dict:
        return {
            "columns": list(CSV_COLUMNS),
            "rows": [[float(x) for x in (*r, F, nu)]
                     for r, F, nu in zip(self.rows, self.speed, self.conserved)],
            "exit_reason": self.exit_reason,
            "metric": self.metric,
            "stats": self.stats,
        }


def _rev(surface):
    if surface.kind != "revolution":
        raise TypeError("geodesics are implemented for surfaces of revolution only")


def unit_normalize(surface, p, y) -> np.ndarray:
    """``y / F(p, y)``: same direction, unit slope-metric speed."""
    _rev(surface)
    _require_convex(surface, p)
    y = _vec(y)
    m, m1, _ = surface.jet(p[0])
    return y / K.slope_F(m, m1, y[0], y[1])


def initial_velocity(surface, u0: float, theta: float) -> np.ndarray:
    """Unit velocity at angle ``theta`` from the uphill meridian direction ``+u``.

    ``theta = pi/2`` is the parallel direction ``+v``.
    """
    m, m1, _ = surface.jet(u0)
    y = np.array([math.cos(theta) / math.sqrt(1.0 + m1 * m1), math.sin(theta) / m])
    if abs(y[0]) < 1e-15 * abs(y[1]):
        y[0] = 0.0
    if abs(y[1]) < 1e-15 * abs(y[0]):
        y[1] = 0.0
    return unit_normalize(surface, (u0, 0.0), y)


def clairaut_value(surface, state) -> float:
    """``rho m^2 dv/ds`` at a state (the momentum conjugate to ``v``)."""
    _rev(surface)
    u, du, dv = _state_uvd(state)
    _require_convex(surface, (u, 0.0))
    m, m1, _ = surface.jet(u)
    return K.clairaut(m, m1, du, dv)


def _state_uvd(state):
    if isinstance(state, GeodesicState):
        return state.u, state.du, state.dv
    u, _, du, dv = state[:4]
    return float(u), float(du), float(dv)


def velocity_from_clairaut(surface, u: float, nu_F: float,
                           branch: Literal["du_positive", "du_negative"] = "du_positive") -> np.ndarray:
    """Unit velocity at ``u`` whose Clairaut value is ``nu_F``.

    Solved by bracketed root-finding on the direction angle. On each branch
    the Clairaut value runs monotonically between ``-m(u)`` and ``m(u)``.
    """
    _rev(surface)
    _require_convex(surface, (u, 0.0))
    if branch not in ("du_positive", "du_negative"):
        raise ValueError(f"unknown branch {branch!r}")
    m, m1, _ = surface.jet(u)
    if abs(nu_F) > m * (1.0 + 1e-12):
        raise Unattainable(f"|nu_F| = {abs(nu_F)} exceeds m(u) = {m}")
    if abs(nu_F) >= m * (1.0 - 1e-15):
        return np.array([0.0, math.copysign(1.0 / m, nu_F)])
    if branch == "du_positive":
        lo, hi = -0.5 * math.pi, 0.5 * math.pi
    else:
        lo, hi = 0.5 * math.pi, 1.5 * math.pi
    if nu_F == 0.0:
        return initial_velocity(surface, u, 0.0 if branch == "du_positive" else math.pi)

    def resid(theta):
        y = initial_velocity(surface, u, theta)
        return K.clairaut(m, m1, y[0], y[1]) - nu_F

    flo, fhi = resid(lo), resid(hi)
    if flo * fhi > 0:
        raise AmbiguousBranch(f"no sign change of the Clairaut residual on branch {branch}")
    theta = brentq(resid, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    return initial_velocity(surface, u, theta)


def _speed(surface, metric, u, du, dv):
    return K.speed(surface.code, surface.par, metric == "finsler", u, du, dv)


def integrate_geodesic(surface, init, length: float, opts: IntegratorOptions | None = None,
                       strict: bool = False) -> GeodesicTrace:
    """Integrate a unit-speed geodesic over ``length`` units of arclength.

    Leaving the chart or a step-size underflow ends the run early; the
    partial trace is returned with ``exit_reason`` set. With
    ``strict=True`` those outcomes raise :class:`DomainExit` /
    :class:`StepFailure` carrying the trace instead.
    """
    _rev(surface)
    opts = opts or IntegratorOptions()
    finsler = opts.metric == "finsler"
    if isinstance(init, GeodesicState):
        y0 = np.array([init.u, init.v, init.du, init.dv], float)
        s0 = init.s
    else:
        y0 = np.asarray(init, float)[:4].copy()
        s0 = 0.0
    check_point(surface, (y0[0], y0[1]))
    if finsler:
        _require_convex(surface, (y0[0], y0[1]))
    if y0[2] == 0.0 and y0[3] == 0.0:
        raise ZeroVector("initial velocity is zero")
    sp0 = _speed(surface, opts.metric, y0[0], y0[2], y0[3])
    if abs(sp0 - 1.0) > UNIT_TOL:
        raise ValueError(f"initial state is not unit speed (speed = {sp0})")
    umin, umax = surface.domain
    code, par = surface.code, surface.par
    chunks = []
    stats = {"n_accepted": 0, "n_rejected": 0, "renorm_max_drift": 0.0}
    status = K.OK

    if opts.method == "rk4_fixed":
        n = max(1, int(round(length / opts.step)))
        h = length / n
        done = 0
        y, s = y0, s0
        while done < n:
            m_steps = min(n - done, _CHUNK - 1)
            out = np.empty((m_steps + 1, 5))
            rows, status, drift = K.rk4_run(code, par, finsler, y, s, h, m_steps,
                                            umin, umax, opts.renormalize_every, out)
            chunks.append(out[:rows] if not chunks else out[1:rows])
            stats["renorm_max_drift"] = max(stats["renorm_max_drift"], drift)
            done += rows - 1
            stats["n_accepted"] += rows - 1
            if status != K.OK:
                break
            y, s = out[rows - 1, 1:5].copy(), s0 + done * h
    else:
        y, s, h = y0, s0, opts.step
        s_end = s0 + length
        budget = opts.max_steps
        while True:
            out = np.empty((_CHUNK, 5))
            rows, status, n_acc, n_rej, drift, h = K.dopri_run(
                code, par, finsler, y, s, s_end, h, opts.tol, budget,
                umin, umax, opts.renormalize_every, out)
            chunks.append(out[:rows] if not chunks else out[1:rows])
            stats["n_accepted"] += n_acc
            stats["n_rejected"] += n_rej
            stats["renorm_max_drift"] = max(stats["renorm_max_drift"], drift)
            budget -= n_acc + n_rej
            if status != K.EXIT_BUFFER:
                break
            y, s = out[rows - 1, 1:5].copy(), out[rows - 1, 0]

    rows = np.vstack(chunks)
    reason = {K.OK: "completed", K.EXIT_DOMAIN: "domain_exit", K.EXIT_STEP: "step_failure"}[int(status)]
    nu = K.clairaut_rows(code, par, rows)
    nu_r = _riem_clairaut(surface, rows)
    sp = K.speed_rows(code, par, finsler, rows)
    cons = nu if finsler else nu_r
    stats.update(
        n_rows=int(rows.shape[0]),
        s_final=float(rows[-1, 0]),
        max_speed_error=float(np.max(np.abs(sp - 1.0))),
        clairaut_initial=float(cons[0]),
        clairaut_max_drift=float(np.max(np.abs(cons - cons[0]))),
    )
    trace = GeodesicTrace(rows, nu, nu_r, sp, reason, opts.metric, stats)
    if strict and reason == "domain_exit":
        raise DomainExit(f"geodesic left the chart at s = {rows[-1, 0]:.6g}", trace)
    if strict and reason == "step_failure":
        raise StepFailure(f"step-size control failed at s = {rows[-1, 0]:.6g}", trace)
    return trace


def _riem_clairaut(surface, rows):
    m = surface.profile(rows[:, 1])
    return m * m * rows[:, 4]


@dataclass
class TurningPointReport:
    verdict: bool | None  # None: not applicable
    min_margin: float
    reason: str = ""

    def to_json(self):
        return asdict(self)


def turning_point_check(surface, trace: GeodesicTrace, tol: float = 1e-9) -> TurningPointReport:
    """For a geodesic starting tangent to a parallel, check ``m(u(s)) > m(u(0))``."""
    du0, dv0 = trace.rows[0, 3], trace.rows[0, 4]
    if dv0 == 0.0:
        return TurningPointReport(None, math.nan, "meridian start")
    if abs(du0) > 1e-12 * abs(dv0):
        return TurningPointReport(None, math.nan, "start is not tangent to a parallel")
    m = surface.profile(trace.u)
    margin = m[1:] - m[0]
    if margin.size == 0:
        return TurningPointReport(None, math.nan, "trace too short")
    mm = float(np.min(margin))
    return TurningPointReport(bool(mm > -tol), mm)

"""Surface models: surfaces of revolution and height-field graphs.

Both kinds are closed-form families selected by name and a handful of
numeric parameters. Surfaces are immutable; every evaluator is pure.

Revolution surfaces use the chart ``(u, v) -> (m(u) cos v, m(u) sin v, u)``,
so the height is ``u`` itself and the slope one-form is ``du``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels as K
from .errors import DomainError

SQRT6 = math.sqrt(6.0)
SLOPE_AMPLITUDE = 1.0 / (2.0 * SQRT6)

DEFAULT_CAP = 50.0
DEFAULT_MARGIN = 1e-3


class Point2(NamedTuple):
    c1: float
    c2: float


class Vec2(NamedTuple):
    d1: float
    d2: float


@dataclass(frozen=True)
class SurfaceOfRevolution:
    """Profile ``m(u) > 0`` on the open interval ``domain``.

    ``family`` is one of ``"sqrt"`` (``m = sqrt(k u^2 - c)``), ``"log"``
    (``m = A sqrt(-2 ln(k u^2))``) or ``"cone"`` (``m = k u + c``).
    """

    name: str
    family: str
    params: tuple
    domain: tuple[float, float]

    kind = "revolution"

    def __post_init__(self):
        if self.family not in _REV_CODES:
            raise ValueError(f"unknown revolution family {self.family!r}")
        lo, hi = self.domain
        if not lo < hi:
            raise ValueError("domain must satisfy u_min < u_max")

    @property
    def code(self) -> int:
        return _REV_CODES[self.family]

    @property
    def par(self) -> np.ndarray:
        return np.array(self.params, dtype=np.float64)

    def jet(self, u: float) -> tuple[float, float, float]:
        """``(m, m', m'')`` at a scalar ``u``."""
        return K.profile(self.code, self.par, float(u))

    def profile(self, u):
        return self._eval(u, 0)

    def profile_d1(self, u):
        return self._eval(u, 1)

    def profile_d2(self, u):
        return self._eval(u, 2)

    def _eval(self, u, i):
        if np.ndim(u) == 0:
            return self.jet(u)[i]
        code, par = self.code, self.par
        return np.array([K.profile(code, par, float(x))[i] for x in np.ravel(u)]).reshape(np.shape(u))

    def contains(self, p) -> bool:
        return self.domain[0] <= p[0] <= self.domain[1]


@dataclass(frozen=True)
class GraphSurface:
    """Graph ``z = f(x, y)`` over the rectangle ``domain = (x0, x1, y0, y1)``."""

    name: str
    family: str
    params: tuple
    domain: tuple[float, float, float, float]

    kind = "graph"

    def __post_init__(self):
        if self.family not in _GRAPH_FAMILIES:
            raise ValueError(f"unknown graph family {self.family!r}")
        x0, x1, y0, y1 = self.domain
        if not (x0 < x1 and y0 < y1):
            raise ValueError("domain must satisfy x_min < x_max and y_min < y_max")

    def height(self, x, y):
        return _GRAPH_FAMILIES[self.family][0](self.params, x, y)

    def grad(self, x, y):
        """``(f_x, f_y)``; broadcasts over array inputs."""
        return _GRAPH_FAMILIES[self.family][1](self.params, x, y)

    def contains(self, p) -> bool:
        x0, x1, y0, y1 = self.domain
        return x0 <= p[0] <= x1 and y0 <= p[1] <= y1


_REV_CODES = {"sqrt": K.SQRT, "log": K.LOG, "cone": K.CONE}


def _plane_h(pr, x, y):
    p, q, r = pr
    return p * x + q * y + r


def _plane_g(pr, x, y):
    p, q, _ = pr
    z = np.zeros(np.broadcast(x, y).shape)
    return p + z, q + z


def _parab_h(pr, x, y):
    top, k = pr
    return top - k * (x * x + y * y)


def _parab_g(pr, x, y):
    _, k = pr
    return -2.0 * k * np.asarray(x, float) + 0.0 * y, -2.0 * k * np.asarray(y, float) + 0.0 * x


def _bump_h(pr, x, y):
    return pr[0] * np.exp(-(x * x + y * y))


def _bump_g(pr, x, y):
    f = pr[0] * np.exp(-(x * x + y * y))
    return -2.0 * x * f, -2.0 * y * f


def _ridge_h(pr, x, y):
    return pr[0] * np.exp(-(x + 2.0) ** 2) + 0.0 * y


def _ridge_g(pr, x, y):
    f = pr[0] * np.exp(-(x + 2.0) ** 2)
    return -2.0 * (x + 2.0) * f + 0.0 * y, 0.0 * f + 0.0 * y


def _diag(fn, dfn):
    # f = A * fn(x + y)
    def h(pr, x, y):
        return pr[0] * fn(x + y)

    def g(pr, x, y):
        d = pr[0] * dfn(x + y)
        return d, d

    return h, g


_GRAPH_FAMILIES = {
    "plane": (_plane_h, _plane_g),
    "paraboloid": (_parab_h, _parab_g),
    "gaussian-bump": (_bump_h, _bump_g),
    "ridge": (_ridge_h, _ridge_g),
    "arctan-slope": _diag(np.arctan, lambda t: 1.0 / (1.0 + t * t)),
    "softplus-slope": _diag(lambda t: t - np.logaddexp(0.0, t), lambda t: np.exp(-np.logaddexp(0.0, t))),
    "asinh-slope": _diag(np.arcsinh, lambda t: 1.0 / np.sqrt(t * t + 1.0)),
}

# family -> (ordered parameter names, defaults)
GRAPH_PARAMS = {
    "plane": (("p", "q", "r"), (0.0, 0.0, 0.0)),
    "paraboloid": (("top", "k"), (100.0, 1.0)),
    "gaussian-bump": (("amplitude",), (SLOPE_AMPLITUDE,)),
    "ridge": (("amplitude",), (SLOPE_AMPLITUDE,)),
    "arctan-slope": (("amplitude",), (SLOPE_AMPLITUDE,)),
    "softplus-slope": (("amplitude",), (SLOPE_AMPLITUDE,)),
    "asinh-slope": (("amplitude",), (SLOPE_AMPLITUDE,)),
}
REV_PARAMS = {
    "sqrt": (("k", "c"), (6.0, 1.0)),
    "log": (("A", "k"), (0.5, 24.0)),
    "cone": (("k", "c"), (2.0, 0.0)),
}


def natural_interval(family: str, params) -> tuple[float, float]:
    """Largest open interval on which the revolution profile is positive."""
    if family == "sqrt":
        k, c = params
        return (math.sqrt(c / k) if c > 0 else 0.0), math.inf
    if family == "log":
        _, k = params
        return 0.0, 1.0 / math.sqrt(k)
    k, c = params
    return -c / k, math.inf


def revolution(family: str, name: str | None = None, domain=None, margin=DEFAULT_MARGIN,
               cap=DEFAULT_CAP, **params) -> SurfaceOfRevolution:
    names, defaults = REV_PARAMS[family]
    vals = tuple(float(params.pop(n, d)) for n, d in zip(names, defaults))
    if params:
        raise ValueError(f"unknown parameters for {family}: {sorted(params)}")
    if domain is None:
        lo, hi = natural_interval(family, vals)
        domain = (lo + margin, min(hi - margin, cap))
    return SurfaceOfRevolution(name or f"revolution-{family}", family, vals, tuple(map(float, domain)))


def graph(family: str, name: str | None = None, domain=None, cap=DEFAULT_CAP, **params) -> GraphSurface:
    names, defaults = GRAPH_PARAMS[family]
    vals = tuple(float(params.pop(n, d)) for n, d in zip(names, defaults))
    if params:
        raise ValueError(f"unknown parameters for {family}: {sorted(params)}")
    if domain is None:
        domain = (-cap, cap, -cap, cap)
    return GraphSurface(name or family, family, vals, tuple(map(float, domain)))


def gallery() -> dict[str, SurfaceOfRevolution | GraphSurface]:
    """Named prebuilt surfaces, including every example surface family."""
    items = [
        graph("plane"),
        graph("plane", name="flat"),
        graph("paraboloid"),
        graph("gaussian-bump"),
        graph("ridge"),
        graph("arctan-slope"),
        graph("softplus-slope"),
        graph("asinh-slope"),
        revolution("sqrt", name="revolution-sqrt"),
        revolution("log", name="revolution-log"),
        revolution("cone", name="cone"),
    ]
    return {s.name: s for s in items}


def lookup(name: str):
    try:
        return gallery()[name]
    except KeyError:
        raise KeyError(f"no gallery surface named {name!r}") from None


_REV_ALIASES = {"revolution-sqrt": "sqrt", "revolution-log": "log", "cone": "cone",
                "sqrt": "sqrt", "log": "log"}
_GRAPH_ALIASES = {"flat": "plane"}


def from_descriptor(desc: dict):
    """Build a surface from ``{"family": ..., "params": {...}, "domain": {...}}``.

    Revolution domains use ``u_min``/``u_max``; graph domains use
    ``x_min``/``x_max``/``y_min``/``y_max``. Missing keys fall back to the
    family defaults.
    """
    if not isinstance(desc, dict) or "family" not in desc:
        raise ValueError("surface descriptor needs a 'family' key")
    fam = desc["family"]
    params = dict(desc.get("params") or {})
    dom = desc.get("domain") or {}
    if fam in _REV_ALIASES:
        base = revolution(_REV_ALIASES[fam], **params)
        d = (float(dom.get("u_min", base.domain[0])), float(dom.get("u_max", base.domain[1])))
        return SurfaceOfRevolution(desc.get("name", fam), base.family, base.params, d)
    fam = _GRAPH_ALIASES.get(fam, fam)
    if fam in _GRAPH_FAMILIES:
        base = graph(fam, **params)
        x0, x1, y0, y1 = base.domain
        d = (float(dom.get("x_min", x0)), float(dom.get("x_max", x1)),
             float(dom.get("y_min", y0)), float(dom.get("y_max", y1)))
        return GraphSurface(desc.get("name", fam), fam, base.params, d)
    raise ValueError(f"unknown surface family {fam!r}")


def to_descriptor(surface) -> dict:
    if surface.kind == "revolution":
        names, _ = REV_PARAMS[surface.family]
        dom = {"u_min": surface.domain[0], "u_max": surface.domain[1]}
    else:
        names, _ = GRAPH_PARAMS[surface.family]
        dom = dict(zip(("x_min", "x_max", "y_min", "y_max"), surface.domain))
    return {"family": surface.family, "name": surface.name,
            "params": dict(zip(names, surface.params)), "domain": dom}


def check_point(surface, p) -> None:
    if not surface.contains(p):
        raise DomainError(f"point {tuple(p)} outside domain {surface.domain} of {surface.name}")


def riemannian_metric_at(surface, p) -> np.ndarray:
    """Induced metric ``a_ij`` at chart point ``p``."""
    check_point(surface, p)
    if surface.kind == "revolution":
        m, m1, _ = surface.jet(p[0])
        return np.array([[1.0 + m1 * m1, 0.0], [0.0, m * m]])
    fx, fy = (float(t) for t in surface.grad(p[0], p[1]))
    return np.array([[1.0 + fx * fx, fx * fy], [fx * fy, 1.0 + fy * fy]])


def one_form_at(surface, p) -> np.ndarray:
    """Covector ``b_i`` of the slope one-form (the height differential)."""
    check_point(surface, p)
    if surface.kind == "revolution":
        return np.array([1.0, 0.0])
    return np.array([float(t) for t in surface.grad(p[0], p[1])])

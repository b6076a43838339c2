"""Command line front end.

    slopegeo <convexity|geodesic|indicatrix|area|volcoeff> --config FILE
             [--out PATH] [--format csv|json]

Exit codes: 0 success, 1 usage or configuration error, 2 a mathematical
verdict failed (convexity violated, geodesic left the chart early, area or
monotonicity verdict false, non-convex limacon).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Any

import numpy as np

from . import geodesics, measures, metric, surfaces
from .errors import DomainError, RangeError, SlopeGeoError, ZeroVector

EXIT_OK, EXIT_CONFIG, EXIT_VERDICT = 0, 1, 2
COMMANDS = ("convexity", "geodesic", "indicatrix", "area", "volcoeff")


class ConfigError(ValueError):
    pass


def _fmt(x) -> str:
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def _csv(header, rows, footer=None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(x) for x in r])
    if footer:
        w.writerow(footer)
    return buf.getvalue()


def _json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _surface(cfg):
    desc = cfg.get("surface")
    if desc is None:
        raise ConfigError("config needs a 'surface' entry")
    try:
        if isinstance(desc, str):
            return surfaces.lookup(desc)
        return surfaces.from_descriptor(desc)
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc


def _num(cfg, key, default=None, kind=float):
    val = cfg.get(key, default)
    if val is None:
        raise ConfigError(f"missing option {key!r}")
    try:
        return kind(val)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"option {key!r}: {exc}") from exc


def cmd_convexity(cfg, fmt):
    surf = _surface(cfg)
    region = cfg.get("region")
    if isinstance(region, dict) and "disk" in region:
        region = metric.Disk(*map(float, region["disk"]))
    elif region is not None:
        region = tuple(map(float, region))
    rep = metric.convexity_check(surf, region, grid=_num(cfg, "grid", metric.DEFAULT_GRID, int),
                                 tol_margin=_num(cfg, "tol_margin", metric.DEFAULT_TOL_MARGIN))
    if fmt == "csv":
        text = _csv(("holds", "worst_b", "worst_c1", "worst_c2", "margin"),
                    [(rep.holds, rep.worst_b, *rep.worst_point, rep.margin)])
    else:
        text = _json(rep.to_json())
    summary = f"{surf.name}: holds={rep.holds} worst_b={rep.worst_b:.12g} margin={rep.margin:.3g}"
    return text, summary, EXIT_OK if rep.holds else EXIT_VERDICT


def cmd_geodesic(cfg, fmt):
    surf = _surface(cfg)
    if surf.kind != "revolution":
        raise ConfigError("geodesic runs need a surface of revolution")
    u0 = _num(cfg, "u0")
    v0 = _num(cfg, "v0", 0.0)
    angle = _num(cfg, "angle", 0.0)
    length = _num(cfg, "length")
    if not length > 0:
        raise ConfigError("length must be positive")
    try:
        opts = geodesics.IntegratorOptions(**(cfg.get("integrator") or {}))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"integrator options: {exc}") from exc
    if not surf.contains((u0, v0)):
        raise ConfigError(f"u0 = {u0} outside domain {surf.domain}")
    y = geodesics.initial_velocity(surf, u0, angle)
    if opts.metric == "riemannian":
        m, m1, _ = surf.jet(u0)
        y = y / math.sqrt((1 + m1 * m1) * y[0] ** 2 + m * m * y[1] ** 2)
    trace = geodesics.integrate_geodesic(surf, (u0, v0, y[0], y[1]), length, opts)
    text = trace.to_csv() if fmt == "csv" else _json(trace.to_json())
    st = trace.stats
    summary = (f"nu_F={st['clairaut_initial']:.12g} drift={st['clairaut_max_drift']:.3g} "
               f"exit_reason={trace.exit_reason} s_final={st['s_final']:.6g}")
    code = EXIT_OK
    if trace.exit_reason != "completed" and st["s_final"] < 0.01 * length:
        code = EXIT_VERDICT
    return text, summary, code


def cmd_indicatrix(cfg, fmt):
    n = _num(cfg, "samples", 720, int)
    if n < 1:
        raise ConfigError("samples must be >= 1")
    if "surface" in cfg:
        surf = _surface(cfg)
        pt = cfg.get("point")
        if pt is None:
            raise ConfigError("indicatrix on a surface needs 'point'")
        lim = metric.limacon_at(surf, tuple(map(float, pt)))
    else:
        lim = metric.Limacon(_num(cfg, "c"), _num(cfg, "a"))
    if lim.c <= 0 or lim.a < 0:
        raise ConfigError("need c > 0 and a >= 0")
    if not lim.strongly_convex:
        return "", f"limacon c={lim.c} a={lim.a} is not strongly convex (c <= 2a)", EXIT_VERDICT
    rows = []
    for k in range(n):
        th = 2.0 * math.pi * k / n
        X, Y = metric.limacon_point(lim, th)
        rows.append((th, X, Y, metric.okubo_norm(lim, X, Y)))
    worst = max(abs(r[3] - 1.0) for r in rows)
    if fmt == "csv":
        text = _csv(("theta", "X", "Y", "F"), rows)
    else:
        text = _json({"c": lim.c, "a": lim.a, "columns": ["theta", "X", "Y", "F"],
                      "rows": [list(r) for r in rows], "max_abs_F_error": worst})
    summary = f"limacon c={lim.c} a={lim.a}: {n} samples, max |F-1| = {worst:.3g}"
    return text, summary, EXIT_OK if worst <= 1e-12 else EXIT_VERDICT


def cmd_area(cfg, fmt):
    surf = _surface(cfg)
    region = cfg.get("region")
    if region is None or len(region) != 4:
        raise ConfigError("area needs a 4-element 'region'")
    region = tuple(map(float, region))
    rep = measures.area_compare(surf, region, slack=_num(cfg, "slack", 1e-6))
    if fmt == "csv":
        keys = list(rep.verdicts)
        text = _csv(["area_alpha", "area_BH", "area_HT", "BH/alpha", "HT/alpha", "HT/BH", "quad_error"] + keys,
                    [[rep.area_alpha, rep.area_BH, rep.area_HT,
                      *[math.nan if v is None else v for v in rep.ratios.values()],
                      rep.quad_error, *[rep.verdicts[k] for k in keys]]])
    else:
        text = _json(rep.to_json())
    summary = " ".join(f"{k}={v}" for k, v in rep.verdicts.items())
    return text, summary, EXIT_OK if rep.all_verdicts else EXIT_VERDICT


def _b_grid(cfg):
    if "b_values" in cfg:
        vals = [float(b) for b in cfg["b_values"]]
    else:
        g = cfg.get("b_grid") or {"start": 0.01, "stop": 0.49, "step": 0.01}
        start, stop, step = (float(g[k]) for k in ("start", "stop", "step"))
        if not step > 0:
            raise ConfigError("b_grid step must be positive")
        n = int(round((stop - start) / step)) + 1
        vals = [round(start + i * step, 12) for i in range(n)]
    if not vals:
        raise ConfigError("empty b grid")
    for b in vals:
        if not (0.0 <= b < 0.5):
            raise ConfigError(f"b = {b} outside [0, 1/2)")
    return vals


def cmd_volcoeff(cfg, fmt):
    grid = _b_grid(cfg)
    rows = []
    for b in grid:
        vc = measures.volume_coefficients(b)
        rows.append((b, vc.f, vc.g, vc.h, vc.f_quad, vc.g_quad))
    arr = np.array(rows)
    checks = {
        "f_decreasing": bool(np.all(np.diff(arr[:, 1]) < 0)),
        "g_decreasing": bool(np.all(np.diff(arr[:, 2]) < 0)),
        "h_increasing": bool(np.all(np.diff(arr[:, 3]) > 0)),
    }
    ok = all(checks.values())
    header = ("b", "f", "g", "h", "f_quad", "g_quad")
    if fmt == "csv":
        footer = ["monotonic", "pass" if ok else "fail"] + [f"{k}={'pass' if v else 'fail'}" for k, v in checks.items()]
        text = _csv(header, rows, footer)
    else:
        text = _json({"columns": list(header), "rows": [list(r) for r in rows],
                      "monotonic": ok, "checks": checks})
    summary = "monotonicity " + ("pass" if ok else "fail") + " " + str(checks)
    return text, summary, EXIT_OK if ok else EXIT_VERDICT


_HANDLERS = {"convexity": cmd_convexity, "geodesic": cmd_geodesic, "indicatrix": cmd_indicatrix,
             "area": cmd_area, "volcoeff": cmd_volcoeff}
_DEFAULT_FORMAT = {"convexity": "json", "geodesic": "csv", "indicatrix": "csv", "area": "json", "volcoeff": "csv"}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="slopegeo", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", required=True, type=Path, help="JSON configuration file")
    ap.add_argument("--out", type=Path, help="output path (default: stdout)")
    ap.add_argument("--format", choices=("csv", "json"), help="output format")
    return ap


def _load(path: Path) -> dict[str, Any]:
    try:
        cfg = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    return cfg


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = _load(args.config)
        fmt = args.format or cfg.get("format") or _DEFAULT_FORMAT[args.command]
        if fmt not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {fmt!r}")
        text, summary, code = _HANDLERS[args.command](cfg, fmt)
    except (ConfigError, DomainError, RangeError, ZeroVector) as exc:
        print(f"slopegeo: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SlopeGeoError as exc:
        print(f"slopegeo: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VERDICT
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(summary, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

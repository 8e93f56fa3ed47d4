"""Batch command-line interface.

Subcommands::

    berrybox bc         classify a boundary condition (JSON)
    berrybox spectrum   tabulate the closed-form spectrum (CSV)
    berrybox berry      loop phases by one or more prescriptions (CSV [+ SVG])
    berrybox wz         degenerate matrix connection and holonomy (JSON)
    berrybox adiabatic  slow-traversal phase sweep over T (CSV [+ SVG])

All commands accept --config (JSON, unknown keys rejected), --out, --plot,
--tol and --seed; command-line flags override config values.  Every run with
--out also writes the fully resolved configuration, defaults included, to
<out>.config.json so the run can be reproduced from that file alone.
Floating-point output is scientific with 9 significant digits, so identical
configurations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import svgplot
from .adiabatic import Schedule, propagate
from .berry import (
    connection_analytic,
    connection_interior,
    connection_mollified,
    curvature,
    loop_phase_analytic,
    loop_phase_connection,
    loop_phase_overlap,
    power_law_extrapolate,
)
from .boundary import ETA_INF, Eta, as_eta, classify_unitary, eta_to_unitary, require_unitary
from .paths import polyline_path, rectangle_loop
from .spectrum import (
    Geometry,
    degenerate_wavenumber,
    eigenvalue,
    generic_spectrum,
    mode,
    wavenumber,
)
from .wilczek_zee import diagonalize_in_plane_waves, wz_connection, wz_curvature, wz_holonomy

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MISMATCH = 3

_CONFIG_KEYS = {
    "eta", "mass", "n", "geometry", "loop", "method", "mesh", "eps_list",
    "T_list", "window", "resolution", "h", "unitary", "seed",
}
_LOOP_RECT_KEYS = {"type", "l1", "l2", "c1", "c2", "orientation"}
_LOOP_POLY_KEYS = {"type", "points", "orientation"}

_DEFAULTS = {
    "eta": "0+1i",
    "mass": 1.0,
    "n": 0,
    "geometry": {"l": 1.0, "c": 0.0},
    "loop": {"type": "rectangle", "l1": 1.0, "l2": 2.0, "c1": 0.0, "c2": 1.0, "orientation": 1},
    "method": "all",
    "mesh": 256,
    "eps_list": [0.2, 0.1, 0.05, 0.025],
    "T_list": [25.0, 50.0, 100.0, 200.0],
    "window": 8,
    "resolution": 4000,
    "h": None,
    "unitary": None,
    "seed": None,
}

_BERRY_METHODS = ("analytic", "interior", "mollified", "overlap")


class UsageError(ValueError):
    """Invalid input: reported on stderr with exit code 2."""


# ---------------------------------------------------------------------------
# formatting


def _fmt(x: float) -> str:
    return f"{float(x):.8e}"


def _round9(x: float) -> float:
    return float(_fmt(x))


def _fmt_complex(z: complex) -> str:
    z = complex(z)
    return f"{z.real:.8e}{z.imag:+.8e}i"


def _fmt_matrix(m) -> list:
    return [[_fmt_complex(v) for v in row] for row in np.asarray(m, dtype=complex)]


def parse_eta(text) -> Eta:
    """Parse 'a+bi' (or 'inf') into an extended complex boundary parameter."""
    if isinstance(text, Eta):
        return text
    s = str(text).strip().lower()
    if s in ("inf", "infinity"):
        return ETA_INF
    try:
        return Eta(complex(s.replace("i", "j")))
    except ValueError as exc:
        raise UsageError(f"cannot parse eta {text!r}: use 'a+bi' or 'inf'") from exc


def _eta_text(eta: Eta) -> str:
    if eta.infinite:
        return "inf"
    return _fmt_complex(eta.value)


def _parse_complex_entry(v) -> complex:
    if isinstance(v, str):
        return complex(v.strip().lower().replace("i", "j"))
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(v[0], v[1])
    raise UsageError(f"cannot parse matrix entry {v!r}")


def parse_unitary(matrix) -> np.ndarray:
    """Parse a 2x2 matrix given as JSON text or nested lists; entries may be
    numbers, 'a+bi' strings, or [re, im] pairs."""
    if isinstance(matrix, str):
        try:
            matrix = json.loads(matrix)
        except json.JSONDecodeError as exc:
            raise UsageError(f"unitary is not valid JSON: {exc}") from exc
    try:
        rows = [[_parse_complex_entry(v) for v in row] for row in matrix]
        return require_unitary(np.array(rows, dtype=complex))
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


# ---------------------------------------------------------------------------
# config plumbing


def _validate_config(raw: dict) -> dict:
    if not isinstance(raw, dict):
        raise UsageError("config must be a JSON object")
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    loop = raw.get("loop")
    if loop is not None:
        if not isinstance(loop, dict) or "type" not in loop:
            raise UsageError("loop must be an object with a 'type' key")
        allowed = _LOOP_RECT_KEYS if loop["type"] == "rectangle" else _LOOP_POLY_KEYS
        if loop["type"] not in ("rectangle", "polyline"):
            raise UsageError(f"unknown loop type {loop['type']!r}")
        bad = set(loop) - allowed
        if bad:
            raise UsageError(f"unknown loop keys: {sorted(bad)}")
    geo = raw.get("geometry")
    if geo is not None and (not isinstance(geo, dict) or set(geo) - {"l", "c"}):
        raise UsageError("geometry must be an object with keys l and c")
    return raw


def _resolve(args, flag_map) -> dict:
    """Merge defaults, config file, and explicit command-line flags."""
    cfg = dict(_DEFAULTS)
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                cfg.update(_validate_config(json.load(fh)))
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise UsageError(f"config is not valid JSON: {exc}") from exc
    for key, value in flag_map.items():
        if value is not None:
            cfg[key] = value
    if args.seed is not None:
        cfg["seed"] = args.seed
    return cfg


def _loop_from_config(cfg) -> "ParameterPath":
    loop = cfg["loop"]
    try:
        if loop["type"] == "rectangle":
            return rectangle_loop(
                float(loop["l1"]), float(loop["l2"]), float(loop["c1"]), float(loop["c2"]),
                orientation=int(loop.get("orientation", 1)),
            )
        return polyline_path(loop["points"], close=True, orientation=int(loop.get("orientation", 1)))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"invalid loop definition: {exc}") from exc


def _write_output(out_path, text: str):
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _write_resolved_config(out_path, cfg: dict, keys):
    if not out_path:
        return
    resolved = {k: cfg[k] for k in sorted(keys)}
    with open(f"{out_path}.config.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(resolved, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _csv(header: str, rows) -> str:
    return "\n".join([header] + [",".join(r) for r in rows]) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def cmd_bc(args) -> int:
    cfg = _resolve(args, {"eta": args.eta, "unitary": args.unitary})
    if cfg.get("unitary") is not None:
        u = parse_unitary(cfg["unitary"])
        cfg["unitary"] = _fmt_matrix(u)
    else:
        u = eta_to_unitary(parse_eta(cfg["eta"]))
    info = classify_unitary(u)
    doc = {
        "eta": _eta_text(info.eta) if info.eta is not None else None,
        "unitary": _fmt_matrix(u),
        "classification": info.kind,
        "dilation_invariant": info.dilation_invariant,
    }
    _write_output(args.out, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    _write_resolved_config(args.out, cfg, ["eta", "unitary", "seed"])
    return EXIT_OK


def _spectrum_rows_degenerate(eta_pm, ns, mass, geom):
    rows = []
    for n in ns:
        if (eta_pm == 1 and n < 1) or (eta_pm == -1 and n < 0):
            continue
        k = degenerate_wavenumber(eta_pm, n)
        lam = k ** 2 / (2.0 * mass * geom.l ** 2)
        rows.append((str(n), _fmt(k), "nan", _fmt(lam)))
    return rows


def cmd_spectrum(args) -> int:
    n_range = None
    if args.n_min is not None or args.n_max is not None:
        n_range = [args.n_min if args.n_min is not None else 0, args.n_max if args.n_max is not None else 5]
    geometry = None
    if args.box_l is not None or args.box_c is not None:
        geometry = {"l": args.box_l if args.box_l is not None else 1.0,
                    "c": args.box_c if args.box_c is not None else 0.0}
    cfg = _resolve(args, {
        "eta": args.eta, "mass": args.mass, "n": n_range,
        "geometry": geometry, "method": "generic" if args.check == "generic" else args.check,
    })
    if isinstance(cfg["n"], int):
        cfg["n"] = [0, cfg["n"]] if cfg["n"] >= 0 else [cfg["n"], 0]
    n_lo, n_hi = int(cfg["n"][0]), int(cfg["n"][1])
    if n_hi < n_lo:
        raise UsageError("empty level range")
    mass = float(cfg["mass"])
    geom = Geometry(float(cfg["geometry"]["l"]), float(cfg["geometry"]["c"]))
    eta = parse_eta(cfg["eta"])

    header = "n,k,alpha,lambda"
    if eta.degenerate:
        if not args.degenerate:
            raise UsageError(
                "eta = +/-1 is degenerate; pass --degenerate to tabulate the paired bases"
            )
        pm = 1 if abs(eta.value - 1.0) < 1e-14 else -1
        rows = _spectrum_rows_degenerate(pm, range(n_lo, n_hi + 1), mass, geom)
        _write_output(args.out, _csv(header, rows))
        _write_resolved_config(args.out, cfg, ["eta", "mass", "n", "geometry", "method", "seed"])
        return EXIT_OK

    ns = list(range(n_lo, n_hi + 1))
    modes = [mode(n, eta) for n in ns]
    lams = [eigenvalue(m, geom, mass) for m in modes]
    rows = [
        (str(m.n), _fmt(m.k), _fmt(m.alpha), _fmt(lam))
        for m, lam in zip(modes, lams)
    ]
    if cfg["method"] == "generic":
        header += ",lambda_numeric"
        # the requested n-range need not be the lowest levels; solve deep
        # enough to cover it, then pair each row with the nearest root
        kmax = max(abs(m.k) for m in modes)
        count = int(np.ceil(kmax / np.pi)) + 3
        levels = generic_spectrum(eta_to_unitary(eta), count=count, mass=mass, geometry=geom)
        numeric_all = np.array([lv.lam for lv in levels])
        numeric = [numeric_all[np.argmin(np.abs(numeric_all - lam))] for lam in lams]
        rows = [r + (_fmt(v),) for r, v in zip(rows, numeric)]
    _write_output(args.out, _csv(header, rows))
    _write_resolved_config(args.out, cfg, ["eta", "mass", "n", "geometry", "method", "seed"])
    return EXIT_OK


def _berry_phase_rows(m, path, methods, cfg):
    """Per-method convergence rows plus each method's final phase."""
    rows, finals = [], {}
    analytic = loop_phase_analytic(m, path)
    if "analytic" in methods:
        rows.append(("analytic", "", "", "", _fmt(analytic), ""))
        finals["analytic"] = analytic
    if "interior" in methods:
        h0 = cfg["h"] if cfg["h"] is not None else 1e-4
        prev = None
        for h in (h0, h0 / 2.0):
            phase = loop_phase_connection(
                m, path, lambda mm, g, hh=h: connection_interior(mm, g, hh * g.l)
            )
            err = "" if prev is None else _fmt(abs(phase - prev))
            rows.append(("interior", "", "", _fmt(h), _fmt(phase), err))
            prev = phase
        finals["interior"] = prev
    if "mollified" in methods:
        eps_list = [float(e) for e in cfg["eps_list"]]
        phases = []
        for eps in eps_list:
            phase = loop_phase_connection(
                m, path, lambda mm, g, ee=eps: connection_mollified(mm, g, ee * g.l)
            )
            phases.append(phase)
            rows.append(("mollified", "", _fmt(eps), "", _fmt(phase), ""))
        limit, _order = power_law_extrapolate(eps_list, phases)
        rows.append(("mollified", "", _fmt(0.0), "", _fmt(limit), _fmt(abs(limit - phases[-1]))))
        finals["mollified"] = limit
    if "overlap" in methods:
        mesh = int(cfg["mesh"])
        # floor of 16 keeps the internal half-mesh error estimate away from
        # degenerate samplings where neighboring boxes stop overlapping
        for mm in sorted({max(mesh // 4, 16), max(mesh // 2, 16), max(mesh, 16)}):
            res = loop_phase_overlap(m, path, mm)
            rows.append(("overlap", str(mm), "", "", _fmt(res.phase), _fmt(res.err_estimate)))
        finals["overlap"] = res.phase
    return rows, finals, analytic


def cmd_berry(args) -> int:
    loop = None
    if args.loop_rect:
        l1, l2, c1, c2 = args.loop_rect
        loop = {"type": "rectangle", "l1": l1, "l2": l2, "c1": c1, "c2": c2,
                "orientation": args.orientation if args.orientation else 1}
    cfg = _resolve(args, {
        "eta": args.eta, "n": args.n, "loop": loop,
        "method": "curvature-map" if args.curvature_map else args.method,
        "mesh": args.mesh, "eps_list": args.eps_list, "h": args.h,
    })
    eta = parse_eta(cfg["eta"])
    if eta.degenerate:
        raise UsageError("eta = +/-1 is degenerate; use the wz subcommand")
    m = mode(int(cfg["n"]), eta)
    path = _loop_from_config(cfg)
    keys = ["eta", "n", "loop", "method", "mesh", "eps_list", "h", "seed"]

    if cfg["method"] == "curvature-map":
        lo_l, hi_l = sorted((cfg["loop"]["l1"], cfg["loop"]["l2"]))
        lo_c, hi_c = sorted((cfg["loop"]["c1"], cfg["loop"]["c2"]))
        grid = int(cfg["mesh"]) if int(cfg["mesh"]) <= 64 else 5
        rows = []
        for l in np.linspace(lo_l, hi_l, grid):
            for c in np.linspace(lo_c, hi_c, grid):
                rows.append((_fmt(l), _fmt(c), _fmt(curvature(m, Geometry(l, c)).f_lc)))
        _write_output(args.out, _csv("l,c,f_lc", rows))
        _write_resolved_config(args.out, cfg, keys)
        return EXIT_OK

    if cfg["method"] == "all":
        methods = list(_BERRY_METHODS)
    else:
        methods = [s.strip() for s in str(cfg["method"]).split(",")]
        bad = [s for s in methods if s not in _BERRY_METHODS]
        if bad:
            raise UsageError(f"unknown berry method(s): {bad}")
    rows, finals, analytic = _berry_phase_rows(m, path, methods, cfg)
    _write_output(args.out, _csv("method,mesh,eps,h,phase,err_est", rows))
    _write_resolved_config(args.out, cfg, keys)

    if args.plot:
        series = []
        mesh = int(cfg["mesh"])
        if "overlap" in methods:
            meshes = [max(mesh // 4, 8), max(mesh // 2, 8), mesh]
            errs = [abs(loop_phase_overlap(m, path, mm).phase - analytic) for mm in meshes]
            series.append({"x": meshes, "y": [max(e, 1e-16) for e in errs], "label": "overlap |error|"})
        if "mollified" in methods:
            eps_list = [float(e) for e in cfg["eps_list"]]
            errs = [
                abs(loop_phase_connection(m, path, lambda mm, g, ee=e: connection_mollified(mm, g, ee * g.l)) - analytic)
                for e in eps_list
            ]
            series.append({"x": [1.0 / e for e in eps_list], "y": [max(e, 1e-16) for e in errs],
                           "label": "mollified |error| vs 1/eps"})
        if not series:
            series.append({"x": [1, 10], "y": [abs(analytic)] * 2, "label": "analytic phase"})
            svgplot.line_plot(series, title="loop phase", xlabel="mesh", ylabel="phase", path=args.plot)
        else:
            series.append({"x": series[0]["x"], "y": [1e-16] * len(series[0]["x"]),
                           "label": "analytic reference", "dashed": True})
            svgplot.line_plot(series, title="loop-phase convergence", xlabel="mesh / inverse width",
                              ylabel="|phase - analytic|", path=args.plot, logx=True, logy=True)

    if args.tol is not None and len(finals) > 1:
        values = list(finals.values())
        spread = max(values) - min(values)
        if spread > args.tol:
            print(
                f"oracle disagreement {spread:.3e} exceeds tolerance {args.tol:.3e}: "
                + ", ".join(f"{k}={v:.9e}" for k, v in finals.items()),
                file=sys.stderr,
            )
            return EXIT_MISMATCH
    return EXIT_OK


def cmd_wz(args) -> int:
    loop = None
    if args.loop_rect:
        l1, l2, c1, c2 = args.loop_rect
        loop = {"type": "rectangle", "l1": l1, "l2": l2, "c1": c1, "c2": c2,
                "orientation": args.orientation if args.orientation else 1}
    cfg = _resolve(args, {"eta": args.eta, "n": args.n, "loop": loop, "mesh": args.mesh})
    eta = parse_eta(cfg["eta"])
    if eta.infinite or eta.value not in (1.0 + 0j, -1.0 + 0j):
        raise UsageError("wz requires eta = 1 or eta = -1")
    pm = int(eta.value.real)
    n = int(cfg["n"])
    path = _loop_from_config(cfg)
    g0 = path.point(0.0)
    try:
        conn = wz_connection(pm, n, g0)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    curv = wz_curvature(pm, n, g0)
    hol = wz_holonomy(pm, n, path, int(cfg["mesh"]))
    diag, q = diagonalize_in_plane_waves(conn)
    doc = {
        "eta": pm,
        "n": n,
        "geometry": {"l": _round9(g0.l), "c": _round9(g0.c)},
        "connection": {"coeff_l": _fmt_matrix(conn.coeff_l), "coeff_c": _fmt_matrix(conn.coeff_c)},
        "curvature": _fmt_matrix(curv),
        "holonomy": _fmt_matrix(hol.matrix),
        "eigenphases": [_round9(p) for p in hol.eigenphases],
        "mesh": hol.mesh,
        "err_estimate": _round9(hol.err_estimate),
        "diagonal_connection": _fmt_matrix(diag),
        "basis_change": _fmt_matrix(q),
        "offdiag_residue": _round9(float(abs(diag[0, 1]) + abs(diag[1, 0]))),
    }
    _write_output(args.out, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    _write_resolved_config(args.out, cfg, ["eta", "n", "loop", "mesh", "seed"])
    return EXIT_OK


def cmd_adiabatic(args) -> int:
    loop = None
    if args.loop_rect:
        l1, l2, c1, c2 = args.loop_rect
        loop = {"type": "rectangle", "l1": l1, "l2": l2, "c1": c1, "c2": c2,
                "orientation": args.orientation if args.orientation else 1}
    cfg = _resolve(args, {
        "eta": args.eta, "mass": args.mass, "n": args.n, "loop": loop,
        "T_list": args.T_list, "window": args.window, "resolution": args.resolution,
    })
    eta = parse_eta(cfg["eta"])
    if eta.degenerate:
        raise UsageError("adiabatic propagation requires nondegenerate eta")
    n = int(cfg["n"])
    window = int(cfg["window"])
    mass = float(cfg["mass"])
    resolution = int(cfg["resolution"])
    path = _loop_from_config(cfg)
    t_list = [float(t) for t in cfg["T_list"]]
    if not t_list:
        raise UsageError("T_list must not be empty")

    def run(T):
        return propagate(Schedule(path, T, resolution), n, eta, window, mass)

    with ThreadPoolExecutor(max_workers=min(4, len(t_list))) as pool:
        reports = list(pool.map(run, t_list))

    rows = [
        (_fmt(T), _fmt(r.total_phase), _fmt(r.dynamical_phase), _fmt(r.geometric_phase),
         _fmt(r.fidelity), "1" if r.adiabatic_warning else "0")
        for T, r in zip(t_list, reports)
    ]
    _write_output(args.out, _csv("T,total,dynamical,geometric,fidelity,warn", rows))
    keys = ["eta", "mass", "n", "loop", "T_list", "window", "resolution", "seed"]
    _write_resolved_config(args.out, cfg, keys)

    if args.plot:
        reference = loop_phase_analytic(mode(n, eta), path)
        errs = [max(abs(r.geometric_phase - reference), 1e-16) for r in reports]
        inv_t = [1.0 / T for T in t_list]
        order = np.argsort(inv_t)
        series = [
            {"x": list(np.array(inv_t)[order]), "y": list(np.array(errs)[order]), "label": "|geometric - analytic|"},
            {"x": list(np.array(inv_t)[order]),
             "y": list(errs[int(order[0])] * np.array(inv_t)[order] / inv_t[int(order[0])]),
             "label": "O(1/T) reference", "dashed": True},
        ]
        svgplot.line_plot(series, title="adiabatic convergence", xlabel="1/T",
                          ylabel="phase error", path=args.plot, logx=True, logy=True)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _add_common(sp):
    sp.add_argument("--config", help="JSON config file; unknown keys are rejected")
    sp.add_argument("--out", help="output path (stdout when omitted)")
    sp.add_argument("--plot", help="write an SVG plot to this path")
    sp.add_argument("--tol", type=float, help="cross-method disagreement tolerance")
    sp.add_argument("--seed", type=int, help="seed for randomized property sweeps")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="berrybox", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("bc", help="classify a boundary condition")
    _add_common(sp)
    sp.add_argument("--eta", help="family parameter 'a+bi' or 'inf'")
    sp.add_argument("--unitary", help="2x2 matrix as JSON, e.g. '[[0,1],[1,0]]'")
    sp.set_defaults(fn=cmd_bc)

    sp = sub.add_parser("spectrum", help="tabulate the spectrum")
    _add_common(sp)
    sp.add_argument("--eta")
    sp.add_argument("--mass", type=float)
    sp.add_argument("--l", dest="box_l", type=float, help="box length")
    sp.add_argument("--c", dest="box_c", type=float, help="box center")
    sp.add_argument("--n-min", type=int)
    sp.add_argument("--n-max", type=int)
    sp.add_argument("--check", choices=["generic"], help="append an independent numeric column")
    sp.add_argument("--degenerate", action="store_true", help="tabulate the eta = +/-1 bases")
    sp.set_defaults(fn=cmd_spectrum)

    sp = sub.add_parser("berry", help="loop phases and curvature maps")
    _add_common(sp)
    sp.add_argument("--eta")
    sp.add_argument("--n", type=int)
    sp.add_argument("--loop-rect", nargs=4, type=float, metavar=("L1", "L2", "C1", "C2"))
    sp.add_argument("--orientation", type=int, choices=[1, -1])
    sp.add_argument("--method", help="comma list of analytic,interior,mollified,overlap or 'all'")
    sp.add_argument("--mesh", type=int)
    sp.add_argument("--eps-list", type=lambda s: [float(v) for v in s.split(",")])
    sp.add_argument("--h", type=float, help="interior finite-difference step, relative to l")
    sp.add_argument("--curvature-map", action="store_true", help="sample f_lc over the loop bounding box")
    sp.set_defaults(fn=cmd_berry)

    sp = sub.add_parser("wz", help="degenerate matrix connection and holonomy")
    _add_common(sp)
    sp.add_argument("--eta")
    sp.add_argument("--n", type=int)
    sp.add_argument("--loop-rect", nargs=4, type=float, metavar=("L1", "L2", "C1", "C2"))
    sp.add_argument("--orientation", type=int, choices=[1, -1])
    sp.add_argument("--mesh", type=int)
    sp.set_defaults(fn=cmd_wz)

    sp = sub.add_parser("adiabatic", help="slow-traversal phase sweep")
    _add_common(sp)
    sp.add_argument("--eta")
    sp.add_argument("--mass", type=float)
    sp.add_argument("--n", type=int)
    sp.add_argument("--loop-rect", nargs=4, type=float, metavar=("L1", "L2", "C1", "C2"))
    sp.add_argument("--orientation", type=int, choices=[1, -1])
    sp.add_argument("--T-list", type=lambda s: [float(v) for v in s.split(",")])
    sp.add_argument("--window", type=int, help="mode window half-width N")
    sp.add_argument("--resolution", type=int, help="time steps per traversal")
    sp.set_defaults(fn=cmd_adiabatic)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"berrybox: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"berrybox: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line front-end.

Subcommands: grid | cat-sweep | circle-sweep | circle-radial | verify.
A --config JSON file supplies defaults; explicit flags win.  Exit codes:
0 success, 1 verification failure, 2 input/validation error, 3 I/O error.
All output is deterministic given (config, seed): no timestamps, C-locale
floats with 17 significant digits.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .cat import critical_delta_analytic
from .circle import CircleCatParams, bessel_j, circle_wigner_bessel, circle_wigner_exact, critical_delta_bound
from .core import PolarPoint, require_clean, state_from_json
from .errors import NoSignChange, OutsideValidityWindow, WnlError
from .solver import (
    cat_delta_family,
    circle_delta_family,
    critical_delta_numeric,
    default_spec,
)
from .verify import run_all
from .wigner import wigner_direct_grid

SQRT2 = math.sqrt(2.0)

DEFAULT_RE_BETAS = [0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0]
DEFAULT_D_VALUES = [1, 2, 3, 4, 5, 6, 7, 8]


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def max_workers() -> int:
    """Thread cap from WNL_THREADS (0 or unset: auto)."""
    raw = os.environ.get("WNL_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wnl", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON file with defaults for the flags below")
        p.add_argument("--out", help="output CSV path")
        p.add_argument("--seed", type=int, help="RNG seed (default 0)")
        p.add_argument("--grid", help="coarse grid as nx,np")
        p.add_argument("--box", help="search box as xmin,xmax,pmin,pmax")
        p.add_argument("--tol", type=float, help="tolerance (sweep bisection)")

    p_grid = sub.add_parser("grid", help="dump W(x, p) of a state JSON to CSV")
    p_grid.add_argument("input", nargs="?", help="state JSON path")
    common(p_grid)

    p_cat = sub.add_parser("cat-sweep", help="critical coherence vs re_beta (cat states)")
    common(p_cat)

    p_circ = sub.add_parser("circle-sweep", help="critical coherence vs d (circle cats)")
    common(p_circ)

    p_rad = sub.add_parser("circle-radial", help="radial profile of the circle cat")
    common(p_rad)

    p_ver = sub.add_parser("verify", help="run the verification suites")
    common(p_ver)
    return parser


def _load_config(path):
    if not path:
        return {}
    with open(path, "r", encoding="ascii") as fh:
        try:
            cfg = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed config JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ValueError("config must be a JSON object")
    return cfg


def _setting(args, cfg, key, default):
    value = getattr(args, key, None)
    if value is not None:
        return value
    return cfg.get(key, default)


def _parse_pair(text, n, name):
    parts = [s.strip() for s in str(text).split(",")]
    if len(parts) != n:
        raise ValueError(f"{name} needs {n} comma-separated values, got {text!r}")
    return parts


def _write_csv(path, header, rows):
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def cmd_grid(args, cfg) -> int:
    input_path = args.input or cfg.get("input")
    if not input_path:
        raise ValueError("grid needs a state JSON (positional argument or config 'input')")
    with open(input_path, "r", encoding="ascii") as fh:
        state = require_clean(state_from_json(fh.read()))

    spec = default_spec(state.max_abs_beta())
    box = (spec.x_min, spec.x_max, spec.p_min, spec.p_max)
    raw_box = _setting(args, cfg, "box", None)
    if raw_box is not None:
        box = tuple(float(v) for v in _parse_pair(raw_box, 4, "--box"))
        if not (box[0] < box[1] and box[2] < box[3]):
            raise ValueError("box must satisfy xmin < xmax and pmin < pmax")
    nx, npts = 101, 101
    raw_grid = _setting(args, cfg, "grid", None)
    if raw_grid is not None:
        nx, npts = (int(v) for v in _parse_pair(raw_grid, 2, "--grid"))
        if nx < 2 or npts < 2:
            raise ValueError("grid sizes must be >= 2")

    xs = np.linspace(box[0], box[1], nx)
    ps = np.linspace(box[2], box[3], npts)
    vals = wigner_direct_grid(state, xs, ps)
    rows = (
        (_fmt(xs[i]), _fmt(ps[j]), _fmt(vals[i, j]))
        for i in range(nx)
        for j in range(npts)
    )
    _write_csv(_setting(args, cfg, "out", "grid.csv"), "x,p,w", rows)
    return 0


def cmd_cat_sweep(args, cfg) -> int:
    re_betas = [float(v) for v in cfg.get("re_beta_values", DEFAULT_RE_BETAS)]
    if not re_betas:
        raise ValueError("empty re_beta range")
    if any(not 0.0 < rb <= 3.0 for rb in re_betas):
        raise ValueError("re_beta values must lie in (0, 3]")
    theta = float(cfg.get("theta", math.pi / 4))
    phi = float(cfg.get("phi", 0.0))
    tol = float(_setting(args, cfg, "tol", 1e-3))

    rows = []
    for rb in re_betas:
        analytic = critical_delta_analytic(rb)
        family = cat_delta_family(theta, phi, rb)
        try:
            res = critical_delta_numeric(family, default_spec(rb), delta_tol=tol)
            rows.append(
                (
                    _fmt(rb),
                    _fmt(res.delta_c),
                    _fmt(analytic),
                    _fmt(abs(res.delta_c - analytic)),
                    "ok",
                )
            )
        except NoSignChange:
            rows.append((_fmt(rb), "nan", _fmt(analytic), "nan", "no_sign_change"))
    _write_csv(
        _setting(args, cfg, "out", "cat_sweep.csv"),
        "re_beta,delta_c_numeric,delta_c_analytic,abs_err,status",
        rows,
    )
    return 0


def cmd_circle_sweep(args, cfg) -> int:
    m = int(cfg.get("m", 64))
    d_values = [float(v) for v in cfg.get("d_values", DEFAULT_D_VALUES)]
    if not d_values:
        raise ValueError("empty d range")
    if any(not 1.0 <= d <= 8.0 for d in d_values):
        raise ValueError("d values must lie in [1, 8]")
    if m % 2 or m < 4:
        raise ValueError("m must be an even integer >= 4")
    tol = float(_setting(args, cfg, "tol", 0.05))

    rows = []
    for d in d_values:
        bound = critical_delta_bound(CircleCatParams(m=m, d=d, delta=1.0)).value
        family = circle_delta_family(m, d)
        try:
            res = critical_delta_numeric(
                family, default_spec(d), delta_tol=tol, relative=True
            )
            rows.append((_fmt(d), _fmt(res.delta_c), _fmt(bound), "ok"))
        except NoSignChange:
            rows.append((_fmt(d), "nan", _fmt(bound), "no_sign_change"))
    _write_csv(
        _setting(args, cfg, "out", "circle_sweep.csv"),
        "d,delta_c_numeric,delta_c_bound,status",
        rows,
    )
    return 0


def cmd_circle_radial(args, cfg) -> int:
    m = int(cfg.get("m", 64))
    d = float(cfg.get("d", 8.0))
    delta = float(cfg.get("delta", 1.0))
    n_r = int(cfg.get("r_points", 51))
    params = CircleCatParams(m=m, d=d, delta=delta)
    r_max = float(cfg.get("R_max", 0.25))
    if n_r < 2:
        raise ValueError("r_points must be >= 2")

    rows = []
    for radius in np.linspace(0.0, r_max, n_r):
        r = 2.0 * SQRT2 * radius * d
        w_exact = circle_wigner_exact(params, PolarPoint(radius, 0.0))
        try:
            w_bessel = _fmt(circle_wigner_bessel(params, radius))
            status = "in_window"
        except OutsideValidityWindow:
            w_bessel = "nan"
            status = "outside_window"
        rows.append((_fmt(r), _fmt(w_exact), w_bessel, _fmt(bessel_j(0, r) / math.pi), status))
    _write_csv(
        _setting(args, cfg, "out", "circle_radial.csv"),
        "r,w_exact,w_bessel,j0_over_pi,status",
        rows,
    )
    return 0


def cmd_verify(args, cfg) -> int:
    seed = int(_setting(args, cfg, "seed", 0))
    results = run_all(seed)
    width = max(len(r.name) for r in results)
    for r in results:
        tag = "PASS" if r.passed else "FAIL"
        print(f"[{tag}] {r.name.ljust(width)}  {r.detail}")
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"failed: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


_COMMANDS = {
    "grid": cmd_grid,
    "cat-sweep": cmd_cat_sweep,
    "circle-sweep": cmd_circle_sweep,
    "circle-radial": cmd_circle_radial,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        cfg = _load_config(args.config)
        return _COMMANDS[args.command](args, cfg)
    except (ValueError, WnlError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

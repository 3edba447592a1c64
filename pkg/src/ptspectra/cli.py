"""Command-line entry point: ``pt-spectra <subcommand> [options]``.

Options may also come from a JSON config file (``--config FILE``) holding a
flat object whose keys are option names (``e_max`` or ``e-max``); flags given
on the command line override file values.

Exit codes: 0 success, 2 invalid configuration, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import exact, shoot, survey, wkb
from .errors import NumericalFailure, PreconditionError
from .records import PotentialParams, fmt_float, make_records, records_to_csv, records_to_json

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

log = logging.getLogger("ptspectra")


class ConfigError(Exception):
    pass


def _floats(text, n=None):
    try:
        vals = [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"expected comma-separated numbers, got {text!r}") from exc
    if n is not None and len(vals) != n:
        raise ConfigError(f"expected {n} comma-separated numbers, got {text!r}")
    return vals


def _window(text):
    if isinstance(text, (list, tuple)):
        text = ",".join(str(v) for v in text)
    re_min, re_max, im_min, im_max = _floats(text, 4)
    if not (re_min < re_max and im_min < im_max):
        raise ConfigError(f"window needs re_min < re_max and im_min < im_max, got {text!r}")
    return (re_min, re_max, im_min, im_max)


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _require(cond, message):
    if not cond:
        raise ConfigError(message)


def cmd_exact_spectrum(args) -> int:
    _require(args.e_min < args.e_max, f"e_min < e_max required, got [{args.e_min}, {args.e_max}]")
    _require(args.n_scan >= 2, "n_scan >= 2 required")
    _require(args.tol > 0, "tol > 0 required")
    records = exact.real_roots_exact(args.e_min, args.e_max, args.n_scan, args.tol)
    if args.complex:
        window = _window(args.window)
        _require(args.n_re >= 8 and args.n_im >= 8, "n_re, n_im >= 8 required")
        records = exact.complex_roots_exact(window, args.n_re, args.n_im, args.tol)
    if args.format == "json":
        _emit(records_to_json(records), args.output)
    else:
        _emit(records_to_csv(records), args.output)
    return EXIT_OK


def cmd_shoot(args) -> int:
    params = PotentialParams(args.a, args.b).validate()
    _require(args.e_min < args.e_max, f"e_min < e_max required, got [{args.e_min}, {args.e_max}]")
    config = shoot.ShootConfig.for_params(
        params, args.e_min, args.e_max, args.n_scan, args.tol_root, args.tol_residual,
        getattr(args, "x_max", None), getattr(args, "step", None)
    ).validate(params)
    records = shoot.find_real_eigenvalues(params, config)
    if args.format == "json":
        _emit(records_to_json(records, config=config.to_dict()), args.output)
    else:
        _emit(records_to_csv(records), args.output)
    return EXIT_OK


def _nan_to_none(arr):
    return [None if not math.isfinite(v) else float(v) for v in np.asarray(arr).ravel()]


def contour_to_json(grid: exact.ContourGrid) -> str:
    curves = lambda lines: [[[p.real, p.imag] for p in line] for line in lines]  # noqa: E731
    return json.dumps({
        "window": list(grid.window),
        "n_re": grid.n_re,
        "n_im": grid.n_im,
        "re_values": _nan_to_none(grid.re_values),
        "im_values": _nan_to_none(grid.im_values),
        "re_zero_curves": curves(grid.re_zero_curves),
        "im_zero_curves": curves(grid.im_zero_curves),
    })


def contour_to_csv(grid: exact.ContourGrid) -> tuple[str, str]:
    x, y = grid.re_axis, grid.im_axis
    rows = ["re_E,im_E,re_F,im_F"]
    for i in range(grid.n_re):
        for j in range(grid.n_im):
            rows.append(",".join(fmt_float(v) for v in (x[i], y[j], grid.re_values[i, j], grid.im_values[i, j])))
    curves = ["family,curve,re_E,im_E"]
    for family, lines in (("re", grid.re_zero_curves), ("im", grid.im_zero_curves)):
        for c, line in enumerate(lines):
            curves.extend(f"{family},{c},{fmt_float(p.real)},{fmt_float(p.imag)}" for p in line)
    return "\n".join(rows) + "\n", "\n".join(curves) + "\n"


def cmd_contour(args) -> int:
    window = _window(args.window)
    _require(args.n_re >= 2 and args.n_im >= 2, "n_re, n_im >= 2 required")
    grid = exact.contour_grid(window, args.n_re, args.n_im)
    if args.format == "json":
        _emit(contour_to_json(grid), args.output)
    else:
        _require(args.output is not None, "csv contour output needs --output (a polyline sidecar is written next to it)")
        values, curves = contour_to_csv(grid)
        Path(args.output).write_text(values)
        Path(args.output).with_suffix(".curves.csv").write_text(curves)
    return EXIT_OK


SWEEP_FIELDS = ["a", "b", "index", "eigenvalue", "residual", "exhausted", "e_min", "e_max"]
COUNT_FIELDS = ["a", "b", "count", "exhausted", "e_min", "e_max", "error"]


def sweep_to_csv(results) -> tuple[str, str]:
    rows = [",".join(SWEEP_FIELDS)]
    counts = [",".join(COUNT_FIELDS)]
    for r in results:
        common = (fmt_float(r.params.a), fmt_float(r.params.b))
        win = (fmt_float(r.window[0]), fmt_float(r.window[1]))
        for rec in r.eigenvalues:
            rows.append(",".join((*common, str(rec.index), fmt_float(rec.value.real), fmt_float(rec.residual),
                                  str(r.exhausted).lower(), *win)))
        err = "" if r.error is None else json.dumps(r.error)
        counts.append(",".join((*common, str(r.count), str(r.exhausted).lower(), *win, err)))
    return "\n".join(rows) + "\n", "\n".join(counts) + "\n"


def sweep_to_json(results) -> str:
    cells = []
    for r in results:
        cells.append({
            "a": r.params.a,
            "b": r.params.b,
            "e_min": r.window[0],
            "e_max": r.window[1],
            "exhausted": r.exhausted,
            "count": r.count,
            "error": r.error,
            "eigenvalues": [
                {"index": rec.index, "eigenvalue": rec.value.real, "residual": rec.residual}
                for rec in r.eigenvalues
            ],
        })
    return json.dumps({"cells": cells}, indent=2)


def _parse_windows(raw):
    if raw is None:
        return {}
    _require(isinstance(raw, dict), "windows must be an object mapping 'a,b' to [e_min, e_max]")
    out = {}
    for key, val in raw.items():
        a, b = _floats(key, 2)
        _require(isinstance(val, (list, tuple)) and len(val) == 2, f"window for {key!r} must be [e_min, e_max]")
        lo, hi = float(val[0]), float(val[1])
        _require(lo < hi, f"window for {key!r} needs e_min < e_max")
        out[(a, b)] = (lo, hi)
    return out


def cmd_sweep(args) -> int:
    a_values = _floats(args.a_values) if isinstance(args.a_values, str) else [float(v) for v in args.a_values]
    b_values = _floats(args.b_values) if isinstance(args.b_values, str) else [float(v) for v in args.b_values]
    _require(a_values and b_values, "a_values and b_values must be nonempty")
    for a in a_values:
        for b in b_values:
            PotentialParams(a, b).validate()
    _require(args.n_scan >= 2, "n_scan >= 2 required")
    windows = _parse_windows(args.windows)
    results = survey.sweep(a_values, b_values, windows=windows, n_scan=args.n_scan)
    if args.format == "json":
        _emit(sweep_to_json(results), args.output)
    else:
        rows, counts = sweep_to_csv(results)
        _emit(rows, args.output)
        if args.output:
            Path(args.output).with_suffix(".counts.csv").write_text(counts)
    if all(r.error is not None for r in results):
        log.error("every sweep cell failed")
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_wkb_estimate(args) -> int:
    _require(args.b > 0, f"b > 0 required, got {args.b}")
    _require(args.n >= 0, f"n >= 0 required, got {args.n}")
    ns = range(args.n + 1) if args.all_levels else [args.n]
    found = []
    for n in ns:
        e = wkb.wkb_estimate(args.b, n)
        found.append((complex(e), abs(e - wkb.wkb_estimate_quadrature(args.b, n))))
    records = make_records(found, "wkb-estimate", 1e-8, PotentialParams(0.0, args.b), {"b": args.b})
    records = [dataclasses.replace(r, index=n) for r, n in zip(records, ns)]
    if args.format == "json":
        _emit(records_to_json(records), args.output)
    else:
        _emit(records_to_csv(records), args.output)
    return EXIT_OK


class _HelpFormatter(argparse.ArgumentDefaultsHelpFormatter):
    """Shows defaults, except for options that have none."""

    def _get_help_string(self, action):
        if action.default is None:
            return action.help
        return super()._get_help_string(action)


def build_parser() -> argparse.ArgumentParser:
    fmt = _HelpFormatter
    parser = argparse.ArgumentParser(prog="pt-spectra", description=__doc__.splitlines()[0], formatter_class=fmt)
    parser.add_argument("--log-level", default="WARNING", help="logging level name")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON file of option defaults")
        p.add_argument("-o", "--output", help="output path (stdout when omitted)")
        p.add_argument("--format", choices=("csv", "json"), default="json", help="output format")

    p = sub.add_parser("exact-spectrum", help="eigenvalues of p^2 + ix|x| from the Gamma-function secular equation",
                       formatter_class=fmt)
    common(p)
    p.add_argument("--e-min", type=float, default=exact.DEFAULT_REAL_WINDOW[0], help="lower end of the real scan")
    p.add_argument("--e-max", type=float, default=exact.DEFAULT_REAL_WINDOW[1], help="upper end of the real scan")
    p.add_argument("--n-scan", type=int, default=exact.DEFAULT_N_SCAN, help="real scan points")
    p.add_argument("--tol", type=float, default=exact.DEFAULT_TOL, help="max |F| at an accepted root")
    p.add_argument("--complex", action="store_true", help="search the complex window instead of the real axis")
    p.add_argument("--window", default=",".join(str(v) for v in exact.DEFAULT_COMPLEX_WINDOW),
                   help="re_min,re_max,im_min,im_max")
    p.add_argument("--n-re", type=int, default=200, help="seed grid points along Re E")
    p.add_argument("--n-im", type=int, default=200, help="seed grid points along Im E")
    p.set_defaults(func=cmd_exact_spectrum)

    p = sub.add_parser("shoot", help="real eigenvalues of p^2 + (ix)^a|x|^b by shooting", formatter_class=fmt)
    common(p)
    p.add_argument("--a", type=float, required=True, help="exponent of ix, -2 < a < 2")
    p.add_argument("--b", type=float, required=True, help="exponent of |x|, a + b > 0")
    p.add_argument("--e-min", type=float, default=0.0, help="lower end of the energy window")
    p.add_argument("--e-max", type=float, default=20.0, help="upper end of the energy window")
    p.add_argument("--n-scan", type=int, default=shoot.DEFAULT_N_SCAN, help="energy scan points")
    p.add_argument("--x-max", type=float, default=argparse.SUPPRESS,
                   help="truncation radius (default: WKB action >= 30, also past the e_max turning point)")
    p.add_argument("--step", type=float, default=argparse.SUPPRESS,
                   help="RK4 step (default: min(1e-3 x_max, 0.03/sqrt(max|E|)))")
    p.add_argument("--tol-root", type=float, default=shoot.DEFAULT_TOL_ROOT, help="root bracketing tolerance")
    p.add_argument("--tol-residual", type=float, default=shoot.DEFAULT_TOL_RESIDUAL,
                   help="acceptance threshold on |W(E)|")
    p.set_defaults(func=cmd_shoot)

    p = sub.add_parser("contour", help="Re F / Im F grid and zero curves of the ix|x| secular function",
                       formatter_class=fmt)
    common(p)
    p.add_argument("--window", default=",".join(str(v) for v in exact.DEFAULT_COMPLEX_WINDOW),
                   help="re_min,re_max,im_min,im_max")
    p.add_argument("--n-re", type=int, default=201, help="grid points along Re E")
    p.add_argument("--n-im", type=int, default=201, help="grid points along Im E")
    p.set_defaults(func=cmd_contour)

    p = sub.add_parser("sweep", help="real-eigenvalue counts over an (a, b) grid", formatter_class=fmt)
    common(p)
    p.add_argument("--a-values", default=",".join(str(v) for v in survey.REFERENCE_A), help="comma-separated a values")
    p.add_argument("--b-values", default=",".join(str(v) for v in survey.REFERENCE_B), help="comma-separated b values")
    p.add_argument("--n-scan", type=int, default=shoot.DEFAULT_N_SCAN, help="energy scan points per cell")
    p.add_argument("--windows", type=json.loads, default=None,
                   help="JSON object mapping 'a,b' to [e_min, e_max]; unlisted cells use [0, 1.2*max tabulated + 10]")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("wkb-estimate", help="WKB eigenvalue estimate for V = |x|^b", formatter_class=fmt)
    common(p)
    p.add_argument("--b", type=float, required=True, help="exponent of |x|")
    p.add_argument("--n", type=int, default=0, help="quantum number")
    p.add_argument("--all-levels", action="store_true", help="emit levels 0..n")
    p.set_defaults(func=cmd_wkb_estimate)
    return parser


def _load_config(parser, argv):
    """Apply a --config file as subparser defaults, then parse argv for real."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return parser.parse_args(argv)
    try:
        raw = json.loads(Path(known.config).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config file {known.config!r}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config file must hold a JSON object")
    command = next((a for a in argv if not a.startswith("-")), None)
    subparsers = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    if command not in subparsers.choices:
        return parser.parse_args(argv)
    sp = subparsers.choices[command]
    dests = {a.dest for a in sp._actions}
    defaults = {}
    for key, val in raw.items():
        dest = key.replace("-", "_")
        if dest not in dests or dest in ("config", "help"):
            raise ConfigError(f"unknown config key {key!r} for {command}")
        defaults[dest] = val
    for action in sp._actions:
        if action.dest in defaults and action.required:
            action.required = False
    sp.set_defaults(**defaults)
    return parser.parse_args(argv)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = _load_config(parser, argv)
    except ConfigError as exc:
        print(f"pt-spectra: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.WARNING))
    try:
        return args.func(args)
    except (ConfigError, PreconditionError, TypeError) as exc:
        print(f"pt-spectra: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalFailure, ArithmeticError, ValueError) as exc:
        print(f"pt-spectra: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

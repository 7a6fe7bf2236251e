"""Command-line front end: figure datasets, validation oracles, CSV/JSON output.

Identical configurations produce byte-identical output: floats are printed
with 17 significant digits, rows are emitted in a fixed order, and no
timestamps appear in data rows.  All parameters can also be supplied via a
plain key=value config file (--config); command-line flags take precedence.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import scan as scan_mod
from .bounds import bures_comparator, qsl_ratio
from .model import ModelParams, amplitude_series, oracle_amplitude
from .quad import QuadratureSpec
from .smatrix import DensityMatrix2


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_rows(out, fields: list[str], rows: list[dict], fmt: str) -> None:
    if fmt == "csv":
        out.write(",".join(fields) + "\n")
        for row in rows:
            cells = []
            for f in fields:
                v = row[f]
                if isinstance(v, bool):
                    cells.append("true" if v else "false")
                elif isinstance(v, float):
                    cells.append(_fmt(v))
                else:
                    cells.append(str(v))
            out.write(",".join(cells) + "\n")
    else:
        json.dump(rows, out, indent=2, allow_nan=True)
        out.write("\n")


def _load_config(path: str) -> dict:
    values: dict[str, str] = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            values[key.strip().replace("-", "_")] = value.strip()
    return values


_DEFAULTS = {
    "gamma0": 5.0,
    "lam": 50.0,
    "delta": 0.0,
    "tau_d": 0.2,
    "tau": 0.0,
    "tau_max": 2.0,
    "t_max": 1.0,
    "step": 1e-4,
    "n_points": 200,
    "n_gamma0": 30,
    "n_delta": 21,
    "gamma0_min": None,
    "gamma0_max": None,
    "clip": scan_mod.DEFAULT_CLIP,
    "rel_tol": 1e-9,
    "abs_tol": 1e-12,
    "output": "-",
    "format": "csv",
}

_FLOAT_KEYS = {
    "gamma0",
    "lam",
    "delta",
    "tau_d",
    "tau",
    "tau_max",
    "t_max",
    "step",
    "gamma0_min",
    "gamma0_max",
    "clip",
    "rel_tol",
    "abs_tol",
}
_INT_KEYS = {"n_points", "n_gamma0", "n_delta"}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qslkit", description="Speed-limit datasets for the detuned decay model"
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(sp):
        sp.add_argument("--config", default=None, help="key=value file; flags override it")
        sp.add_argument("--output", "-o", default=argparse.SUPPRESS, help="output path, - for stdout")
        sp.add_argument("--format", choices=("csv", "json"), default=argparse.SUPPRESS)
        sp.add_argument("--rel-tol", type=float, default=argparse.SUPPRESS, dest="rel_tol")
        sp.add_argument("--abs-tol", type=float, default=argparse.SUPPRESS, dest="abs_tol")

    def add_params(sp, *names):
        flags = {
            "gamma0": ("--gamma0", float),
            "lam": ("--lambda", float),
            "delta": ("--delta", float),
            "tau_d": ("--tau-d", float),
            "tau": ("--tau", float),
            "tau_max": ("--tau-max", float),
            "t_max": ("--t-max", float),
            "step": ("--step", float),
            "n_points": ("--n-points", int),
            "n_gamma0": ("--n-gamma0", int),
            "n_delta": ("--n-delta", int),
            "gamma0_min": ("--gamma0-min", float),
            "gamma0_max": ("--gamma0-max", float),
            "clip": ("--clip", float),
        }
        for name in names:
            flag, typ = flags[name]
            sp.add_argument(flag, type=typ, default=argparse.SUPPRESS, dest=name)

    sp = sub.add_parser("ratio", help="one speed-limit report at a parameter point")
    add_params(sp, "gamma0", "lam", "delta", "tau_d", "tau")
    add_common(sp)

    sp = sub.add_parser("scan", help="ratio surface over the (gamma0, delta) grid")
    add_params(sp, "lam", "tau_d", "n_gamma0", "n_delta", "gamma0_min", "gamma0_max")
    add_common(sp)

    sp = sub.add_parser("boundary", help="speed-up/no-speed-up transition points")
    add_params(sp, "lam", "tau_d", "n_gamma0", "n_delta", "gamma0_min", "gamma0_max")
    add_common(sp)

    sp = sub.add_parser("sweep-tau", help="evolved-state ratio versus tau")
    add_params(sp, "gamma0", "lam", "delta", "tau_d", "tau_max", "n_points")
    add_common(sp)

    sp = sub.add_parser("decay-rate", help="normalized decay rate versus time")
    add_params(sp, "gamma0", "lam", "delta", "t_max", "n_points", "clip")
    add_common(sp)

    sp = sub.add_parser("compare-bounds", help="trace-distance vs Bures-angle ratio sweep")
    add_params(sp, "lam", "delta", "tau_d", "n_points", "gamma0_min", "gamma0_max")
    add_common(sp)

    sp = sub.add_parser("oracle-check", help="memory-kernel integration vs closed form")
    add_params(sp, "gamma0", "lam", "delta", "t_max", "step")
    add_common(sp)

    return parser


def _merge_options(args: argparse.Namespace) -> dict:
    opts = dict(_DEFAULTS)
    config = getattr(args, "config", None)
    if config:
        raw = _load_config(config)
        for key, value in raw.items():
            if key not in opts:
                raise ValueError(f"unknown config key {key!r}")
            if key in _FLOAT_KEYS:
                opts[key] = float(value)
            elif key in _INT_KEYS:
                opts[key] = int(value)
            else:
                opts[key] = value
    for key, value in vars(args).items():
        if key in ("subcommand", "config"):
            continue
        opts[key] = value
    if opts["gamma0_min"] is None:
        opts["gamma0_min"] = 0.02 * opts["lam"]
    if opts["gamma0_max"] is None:
        opts["gamma0_max"] = 20.0 * opts["lam"]
    return opts


def _quad_spec(opts: dict) -> QuadratureSpec:
    return QuadratureSpec(rel_tol=opts["rel_tol"], abs_tol=opts["abs_tol"])


def _cmd_ratio(opts: dict) -> tuple[list[str], list[dict]]:
    p = ModelParams(gamma0=opts["gamma0"], lam=opts["lam"], delta=opts["delta"])
    report = qsl_ratio(
        p,
        DensityMatrix2.excited(),
        opts["tau_d"],
        tau_start=opts["tau"],
        spec=_quad_spec(opts),
        include_comparator=opts["tau"] == 0.0,
    )
    fields = [
        "gamma0",
        "delta",
        "lambda",
        "tau",
        "tau_d",
        "lambda1",
        "lambda2",
        "lambda_inf",
        "d_measure",
        "tau_qsl",
        "ratio",
        "comparator_ratio",
        "stationary",
        "quad_err",
    ]
    row = {
        "gamma0": p.gamma0,
        "delta": p.delta,
        "lambda": p.lam,
        "tau": opts["tau"],
        "tau_d": report.tau_d,
        "lambda1": report.lambda1,
        "lambda2": report.lambda2,
        "lambda_inf": report.lambda_inf,
        "d_measure": report.d_measure,
        "tau_qsl": report.tau_qsl,
        "ratio": report.ratio,
        "comparator_ratio": report.comparator_ratio,
        "stationary": report.stationary,
        "quad_err": report.quadrature_err,
    }
    return fields, [row]


def _scan_grid(opts: dict) -> scan_mod.ScanGrid:
    gamma0_axis = np.geomspace(opts["gamma0_min"], opts["gamma0_max"], opts["n_gamma0"])
    delta_axis = np.linspace(0.0, 10.0 * opts["lam"], opts["n_delta"])
    return scan_mod.grid_scan(
        gamma0_axis, delta_axis, opts["lam"], opts["tau_d"], spec=_quad_spec(opts)
    )


def _cmd_scan(opts: dict) -> tuple[list[str], list[dict]]:
    grid = _scan_grid(opts)
    fields = ["gamma0", "delta", "lambda", "tau_d", "ratio", "classification", "quad_err"]
    rows = []
    for i, g0 in enumerate(grid.gamma0_axis):
        for j, delta in enumerate(grid.delta_axis):
            report = grid.cells[i][j]
            rows.append(
                {
                    "gamma0": float(g0),
                    "delta": float(delta),
                    "lambda": grid.lam,
                    "tau_d": grid.tau_d,
                    "ratio": report.ratio if report else math.nan,
                    "classification": grid.classification[i][j],
                    "quad_err": report.quadrature_err if report else math.nan,
                }
            )
    return fields, rows


def _cmd_boundary(opts: dict) -> tuple[list[str], list[dict]]:
    grid = _scan_grid(opts)
    points = scan_mod.transition_boundary(grid, spec=_quad_spec(opts))
    fields = ["delta", "gamma0_boundary", "flip_index"]
    rows = [
        {"delta": d, "gamma0_boundary": g, "flip_index": k} for d, g, k in points
    ]
    return fields, rows


def _cmd_sweep_tau(opts: dict) -> tuple[list[str], list[dict]]:
    p = ModelParams(gamma0=opts["gamma0"], lam=opts["lam"], delta=opts["delta"])
    series = scan_mod.sweep_tau(
        p, opts["tau_max"], opts["n_points"], opts["tau_d"], spec=_quad_spec(opts)
    )
    fields = ["tau", "ratio"]
    rows = [
        {"tau": float(t), "ratio": float(v)} for t, v in zip(series.times, series.values)
    ]
    return fields, rows


def _cmd_decay_rate(opts: dict) -> tuple[list[str], list[dict]]:
    p = ModelParams(gamma0=opts["gamma0"], lam=opts["lam"], delta=opts["delta"])
    series = scan_mod.sweep_decay_rate(p, opts["t_max"], opts["n_points"], clip=opts["clip"])
    fields = ["t", "gamma_over_gamma0", "clipped"]
    rows = [
        {"t": float(t), "gamma_over_gamma0": float(v), "clipped": bool(c)}
        for t, v, c in zip(series.times, series.values, series.clipped)
    ]
    return fields, rows


def _cmd_compare_bounds(opts: dict) -> tuple[list[str], list[dict]]:
    gamma0_axis = np.geomspace(opts["gamma0_min"], opts["gamma0_max"], opts["n_points"])
    rho0 = DensityMatrix2.excited()
    spec = _quad_spec(opts)
    fields = ["gamma0", "ratio_trace", "ratio_bures"]
    rows = []
    for g0 in gamma0_axis:
        p = ModelParams(gamma0=float(g0), lam=opts["lam"], delta=opts["delta"])
        trace = qsl_ratio(p, rho0, opts["tau_d"], spec=spec).ratio
        bures = bures_comparator(p, opts["tau_d"], spec=spec)
        rows.append({"gamma0": float(g0), "ratio_trace": trace, "ratio_bures": bures})
    return fields, rows


def _cmd_oracle_check(opts: dict) -> tuple[list[str], list[dict]]:
    p = ModelParams(gamma0=opts["gamma0"], lam=opts["lam"], delta=opts["delta"])
    times, numeric = oracle_amplitude(p, opts["t_max"], opts["step"])
    analytic, _ = amplitude_series(p, times)
    max_err = float(np.max(np.abs(numeric - analytic)))
    fields = ["gamma0", "delta", "lambda", "t_max", "step", "max_abs_error"]
    rows = [
        {
            "gamma0": p.gamma0,
            "delta": p.delta,
            "lambda": p.lam,
            "t_max": opts["t_max"],
            "step": opts["step"],
            "max_abs_error": max_err,
        }
    ]
    return fields, rows


_COMMANDS = {
    "ratio": _cmd_ratio,
    "scan": _cmd_scan,
    "boundary": _cmd_boundary,
    "sweep-tau": _cmd_sweep_tau,
    "decay-rate": _cmd_decay_rate,
    "compare-bounds": _cmd_compare_bounds,
    "oracle-check": _cmd_oracle_check,
}


def run(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        opts = _merge_options(args)
        fields, rows = _COMMANDS[args.subcommand](opts)
    except Exception as exc:  # noqa: BLE001 - converted to a machine-readable record
        record = {"error": type(exc).__name__, "message": str(exc), "subcommand": args.subcommand}
        partial = getattr(exc, "value", None)
        if partial is not None:
            record["partial_value"] = partial
            record["resume"] = "rerun with the same config; partial values are not reused"
        json.dump(record, sys.stderr)
        sys.stderr.write("\n")
        return 1
    if opts["output"] == "-":
        _write_rows(sys.stdout, fields, rows, opts["format"])
    else:
        with open(opts["output"], "w", newline="") as fh:
            _write_rows(fh, fields, rows, opts["format"])
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

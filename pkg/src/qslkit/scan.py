"""Parameter sweeps: ratio surfaces, transition maps, and time series.

Cells and sweep points are independent pure computations; the optional
thread fan-out (QSLKIT_THREADS) never changes the result because outputs
are collected by index.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import quad
from .bounds import SPEED_UP_TOL, BoundReport, qsl_ratio, qsl_ratio_evolved
from .model import ModelParams, decay_rate, markov_limit
from .smatrix import DensityMatrix2

DEFAULT_CLIP = 25.0


def thread_count() -> int:
    """Worker count from QSLKIT_THREADS (default 1)."""
    raw = os.environ.get("QSLKIT_THREADS", "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise ValueError(f"QSLKIT_THREADS must be an integer, got {raw!r}") from exc
    return max(1, n)


def classify(ratio: float) -> str:
    return "speed_up" if ratio < 1.0 - SPEED_UP_TOL else "no_speed_up"


def default_gamma0_axis(lam: float, n: int = 30) -> np.ndarray:
    """Log-spaced couplings covering 0.02*lam .. 20*lam (the figure range)."""
    return np.geomspace(0.02 * lam, 20.0 * lam, n)


def default_delta_axis(lam: float, n: int = 21) -> np.ndarray:
    """Linear detunings covering 0 .. 10*lam."""
    return np.linspace(0.0, 10.0 * lam, n)


@dataclass
class ScanGrid:
    """Ratio surface over (gamma0, delta) with per-cell classification."""

    gamma0_axis: np.ndarray
    delta_axis: np.ndarray
    lam: float
    tau_d: float
    cells: list[list[BoundReport | None]]
    classification: list[list[str]]
    errors: list[list[str | None]]


@dataclass
class TimeSeries:
    """A sampled scalar time series with optional per-point clip markers."""

    times: np.ndarray
    values: np.ndarray
    kind: str
    params: ModelParams
    clip: float | None = None
    clipped: list[bool] | None = None


def _map_indexed(fn, items, threads: int):
    if threads <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def grid_scan(
    gamma0_axis,
    delta_axis,
    lam: float,
    tau_d: float,
    spec: quad.QuadratureSpec | None = None,
    threads: int | None = None,
) -> ScanGrid:
    """qsl_ratio over the (gamma0, delta) grid with the excited initial state.

    Individual cell failures are recorded and the scan continues.
    """
    gamma0_axis = np.asarray(gamma0_axis, dtype=float)
    delta_axis = np.asarray(delta_axis, dtype=float)
    if gamma0_axis.size == 0 or delta_axis.size == 0:
        raise ValueError("scan axes must be non-empty")
    if np.any(np.diff(gamma0_axis) <= 0.0) or np.any(np.diff(delta_axis) <= 0.0):
        raise ValueError("scan axes must be strictly increasing")
    if tau_d <= 0.0:
        raise ValueError("tau_d must be positive")
    rho0 = DensityMatrix2.excited()
    threads = thread_count() if threads is None else threads

    def cell(idx):
        i, j = idx
        p = ModelParams(gamma0=float(gamma0_axis[i]), lam=lam, delta=float(delta_axis[j]))
        try:
            return qsl_ratio(p, rho0, tau_d, spec=spec), None
        except quad.QuadratureError as exc:
            return None, str(exc)

    indices = [(i, j) for i in range(gamma0_axis.size) for j in range(delta_axis.size)]
    results = _map_indexed(cell, indices, threads)

    cells: list[list[BoundReport | None]] = [
        [None] * delta_axis.size for _ in range(gamma0_axis.size)
    ]
    classification = [["error"] * delta_axis.size for _ in range(gamma0_axis.size)]
    errors: list[list[str | None]] = [[None] * delta_axis.size for _ in range(gamma0_axis.size)]
    for (i, j), (report, err) in zip(indices, results):
        cells[i][j] = report
        errors[i][j] = err
        if report is not None:
            classification[i][j] = classify(report.ratio)
    return ScanGrid(
        gamma0_axis=gamma0_axis,
        delta_axis=delta_axis,
        lam=lam,
        tau_d=tau_d,
        cells=cells,
        classification=classification,
        errors=errors,
    )


def transition_boundary(
    grid: ScanGrid, spec: quad.QuadratureSpec | None = None
) -> list[tuple[float, float, int]]:
    """Classification flips per detuning row, refined by bisection on gamma0.

    Returns (delta, gamma0_boundary, flip_index) triples; flip_index counts
    flips within the row (rows can flip more than once in the
    strong-coupling regime).  Rows with uniform classification are omitted.
    """
    rho0 = DensityMatrix2.excited()
    out: list[tuple[float, float, int]] = []
    for j, delta in enumerate(grid.delta_axis):
        col = [grid.classification[i][j] for i in range(grid.gamma0_axis.size)]
        flip_index = 0
        for i in range(len(col) - 1):
            if "error" in (col[i], col[i + 1]) or col[i] == col[i + 1]:
                continue
            lo, hi = float(grid.gamma0_axis[i]), float(grid.gamma0_axis[i + 1])
            lo_speed = col[i] == "speed_up"
            # Bisect in log(gamma0) to 1e-3 relative width.
            while hi / lo > 1.0 + 1e-3:
                mid = math.sqrt(lo * hi)
                p = ModelParams(gamma0=mid, lam=grid.lam, delta=float(delta))
                mid_speed = classify(qsl_ratio(p, rho0, grid.tau_d, spec=spec).ratio) == "speed_up"
                if mid_speed == lo_speed:
                    lo = mid
                else:
                    hi = mid
            out.append((float(delta), math.sqrt(lo * hi), flip_index))
            flip_index += 1
    return out


def sweep_tau(
    p: ModelParams,
    tau_max: float,
    n_points: int,
    tau_d: float,
    spec: quad.QuadratureSpec | None = None,
    threads: int | None = None,
) -> TimeSeries:
    """Evolved-initial-state ratio on a uniform tau grid."""
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    taus = np.linspace(0.0, tau_max, n_points)
    threads = thread_count() if threads is None else threads
    values = _map_indexed(
        lambda tau: qsl_ratio_evolved(p, float(tau), tau_d, spec=spec), taus, threads
    )
    return TimeSeries(
        times=taus, values=np.asarray(values, dtype=float), kind="ratio_vs_tau", params=p
    )


def sweep_decay_rate(
    p: ModelParams, t_max: float, n_points: int, clip: float = DEFAULT_CLIP
) -> TimeSeries:
    """gamma(t)/gamma0 on a uniform grid, clipping singular spikes to +-clip.

    For detuned parameters the tail settles at markov_limit(p)/gamma0.
    """
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    if clip <= 0.0:
        raise ValueError("clip must be positive")
    times = np.linspace(0.0, t_max, n_points)
    raw = np.asarray(decay_rate(p, times), dtype=float) / p.gamma0
    values = np.empty_like(raw)
    clipped = []
    for k, v in enumerate(raw):
        if math.isnan(v):
            values[k] = clip
            clipped.append(True)
        elif abs(v) > clip:
            values[k] = math.copysign(clip, v)
            clipped.append(True)
        else:
            values[k] = v
            clipped.append(False)
    return TimeSeries(
        times=times, values=values, kind="decay_rate", params=p, clip=clip, clipped=clipped
    )


def markov_tail(p: ModelParams) -> float:
    """Normalized Markovian plateau markov_limit(p)/gamma0 for decay-rate plots."""
    return markov_limit(p) / p.gamma0

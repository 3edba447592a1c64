"""Sweeps over (a, b): real-eigenvalue counts, termination flags, monotonicity checks."""
from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import PreconditionError
from .records import EigenvalueRecord, PotentialParams
from .shoot import DEFAULT_N_SCAN, ShootConfig, find_real_eigenvalues

log = logging.getLogger(__name__)

THREADS_ENV = "PT_SPECTRA_THREADS"

REFERENCE_A = (0.0, 0.5, 1.0, 1.5)
REFERENCE_B = (0.5, 1.0, 1.5, 2.0, 2.5, 3.0)

# Published real eigenvalues keyed by (a, b). The flag is True when the
# column ends with "no more real eigenvalues" and False when the listed values
# are only the start of an entirely real spectrum.
REFERENCE_TABLE: dict[tuple[float, float], tuple[tuple[float, ...], bool]] = {
    (0.0, 0.5): ((1.059617, 1.833394, 2.210015, 2.550647, 3.051182, 3.253157, 3.452132, 3.623138, 3.793400, 3.943821), False),
    (0.0, 1.0): ((1.01879, 2.33811, 3.24820, 4.08795, 4.82010, 5.52056, 6.16331, 7.37218, 8.48849, 9.53546), False),
    (0.0, 1.5): ((1.00118, 2.70809, 4.17714, 5.58566, 6.92282, 8.22687, 9.49059, 10.7317, 11.9453, 13.1419), False),
    (0.0, 2.0): ((1, 3, 5, 7, 9, 11, 13, 15, 17, 19), False),
    (0.0, 2.5): ((1.00859, 3.24223, 5.72682, 8.31328, 10.9916, 13.7342, 16.5353, 19.3837, 22.2757, 25.2052), False),
    (0.0, 3.0): ((1.02295, 3.45056, 6.37029, 9.52208, 12.8703, 16.3694, 20.0009, 23.7455, 27.5924, 31.5308), False),
    (0.5, 0.5): ((1.180777,), True),
    (0.5, 1.0): ((1.08693, 3.19578, 4.4220), True),
    (0.5, 1.5): ((1.05583, 3.27843, 5.36421, 7.67568, 9.53919), True),
    (0.5, 2.0): ((1.04896, 3.43454, 6.05174, 8.79101, 11.6207, 14.5219, 17.4829, 20.4952, 23.5529, 26.6504), False),
    (0.5, 2.5): ((1.05404, 3.59460, 6.64515, 9.91884, 13.4256, 17.0514, 20.8691, 24.7239, 28.8137, 32.7868,
                  37.2141, 41.0803, 46.2256), True),
    (0.5, 3.0): ((1.06568, 3.74791, 7.17496, 10.9735, 15.1112, 19.4889, 24.1139, 28.9111, 33.9218, 39.0482,
                  44.3936, 49.7770, 55.4476, 60.9963, 67.0561, 72.5848, 79.2958, 84.3126, 92.7345), True),
    (1.0, 0.5): ((1.446448,), True),
    (1.0, 1.0): ((1.25809,), True),
    (1.0, 1.5): ((1.18627, 4.21683, 6.93323), True),
    (1.0, 2.0): ((1.15627, 4.10923, 7.56227, 11.3144, 15.2916, 19.4515, 23.76667, 28.2175, 32.7891, 37.4698), False),
    (1.0, 2.5): ((1.14615, 4.13051, 7.95153, 12.0844, 16.8072, 21.3065, 27.4779, 30.3268), True),
    (1.0, 3.0): ((1.14685, 4.19436, 8.30206, 12.9101, 18.1062, 23.5322, 29.6147, 35.3873, 42.9034, 47.4048), True),
    (1.5, 0.5): ((1.791941,), True),
    (1.5, 1.0): ((1.48873,), True),
    (1.5, 1.5): ((1.36338, 5.52801, 8.50818), True),
    (1.5, 2.0): ((1.30151, 4.96979, 9.48003, 14.5305, 19.9977, 25.8103, 31.9205, 38.2938, 44.904, 51.7304), False),
    (1.5, 2.5): ((1.26993, 4.80096, 9.60759, 14.6672, 21.7069, 24.9567), True),
    (1.5, 3.0): ((1.2550, 4.7494, 9.7042, 15.2406, 21.891, 28.1147), True),
}

WINDOW_HEADROOM = 1.2
WINDOW_MARGIN = 10.0
DEFAULT_E_MAX = 30.0
# exhausted: gap above the last root exceeds this many times the last level spacing
EXHAUSTION_GAP = 2.0


def default_window(a: float, b: float) -> tuple[float, float]:
    """[0, 1.2 * largest tabulated value + 10] for cells in the reference table.

    The additive margin leaves room beyond a terminated tower to observe the
    absence of further roots. Cells outside the table get [0, 30].
    """
    entry = REFERENCE_TABLE.get((float(a), float(b)))
    if entry is None:
        return (0.0, DEFAULT_E_MAX)
    return (0.0, WINDOW_HEADROOM * max(entry[0]) + WINDOW_MARGIN)


@dataclass
class SweepResult:
    params: PotentialParams
    eigenvalues: list[EigenvalueRecord]
    window: tuple[float, float]
    exhausted: bool
    error: str | None = None
    config: dict = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.eigenvalues)

    @property
    def values(self) -> list[float]:
        return [r.value.real for r in self.eigenvalues]


def is_exhausted(values: list[float], e_min: float, e_max: float) -> bool:
    """Best-effort detection that the real tower ended inside the window.

    True when the root-free stretch above the last root is longer than
    EXHAUSTION_GAP times the last level spacing (an empty window counts as
    exhausted). A finite window can never prove termination.
    """
    if not values:
        return True
    last = values[-1]
    spacing = last - (values[-2] if len(values) > 1 else e_min)
    return (e_max - last) > EXHAUSTION_GAP * spacing


def cell_config(params: PotentialParams, window=None, n_scan: int = DEFAULT_N_SCAN, **kw) -> ShootConfig:
    e_min, e_max = window if window is not None else default_window(params.a, params.b)
    return ShootConfig.for_params(params, e_min, e_max, n_scan=n_scan, **kw)


def count_real(params: PotentialParams, config: ShootConfig) -> SweepResult:
    records = find_real_eigenvalues(params, config)
    values = [r.value.real for r in records]
    return SweepResult(
        params,
        records,
        (config.e_min, config.e_max),
        is_exhausted(values, config.e_min, config.e_max),
        config=config.to_dict(),
    )


def _run_cell(args) -> SweepResult:
    a, b, window, n_scan, kw = args
    params = PotentialParams(float(a), float(b))
    try:
        config = cell_config(params, window, n_scan, **kw)
        return count_real(params, config)
    except (ValueError, ArithmeticError) as exc:
        win = window if window is not None else default_window(a, b)
        return SweepResult(params, [], tuple(win), False, error=f"{type(exc).__name__}: {exc}")


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV, "").strip()
    n = int(raw) if raw else 0
    cores = os.cpu_count() or 1
    return cores if n <= 0 else min(n, cores)


def sweep(
    a_values,
    b_values,
    windows: dict | None = None,
    n_scan: int = DEFAULT_N_SCAN,
    workers: int | None = None,
    **config_kw,
) -> list[SweepResult]:
    """One SweepResult per (a, b) pair, a-major, in input order.

    `windows` maps (a, b) to (e_min, e_max); unlisted pairs use
    `default_window`. Errors in a cell are recorded on its result.
    """
    a_values, b_values = list(a_values), list(b_values)
    if not a_values or not b_values:
        raise PreconditionError("a_values and b_values must be nonempty")
    windows = windows or {}
    jobs = [
        (a, b, windows.get((float(a), float(b))), n_scan, config_kw)
        for a in a_values
        for b in b_values
    ]
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(jobs) == 1:
        return [_run_cell(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_cell, jobs))


@dataclass
class MonotonicityReport:
    violations: list[tuple]
    comparisons: int
    open_cells: list[tuple[float, float]]

    @property
    def ok(self) -> bool:
        return not self.violations


def monotonicity_report(results: list[SweepResult]) -> MonotonicityReport:
    """Check that counts rise with b at fixed a and fall with a at fixed b.

    Only cells whose tower terminated inside the window carry a finite
    count; cells with an open (entirely real so far) tower are listed in
    `open_cells` and left out of the comparisons.
    """
    grid = {(r.params.a, r.params.b): r for r in results}
    a_vals = sorted({k[0] for k in grid})
    b_vals = sorted({k[1] for k in grid})
    missing = [(a, b) for a in a_vals for b in b_vals if (a, b) not in grid]
    if missing:
        raise PreconditionError(f"incomplete (a, b) grid, missing {missing}")

    finite = {k: r.count for k, r in grid.items() if r.exhausted and r.error is None}
    open_cells = sorted(k for k in grid if k not in finite)
    violations = []
    comparisons = 0

    def scan(line, kind, want_increasing):
        nonlocal comparisons
        cells = [k for k in line if k in finite]
        for k0, k1 in zip(cells, cells[1:]):
            comparisons += 1
            c0, c1 = finite[k0], finite[k1]
            bad = c1 < c0 if want_increasing else c1 > c0
            if bad:
                violations.append((kind, k0, k1, c0, c1))

    for a in a_vals:
        scan([(a, b) for b in b_vals], "count decreases with b", True)
    for b in b_vals:
        scan([(a, b) for a in a_vals], "count increases with a", False)
    return MonotonicityReport(violations, comparisons, open_cells)

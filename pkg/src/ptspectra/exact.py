"""Exact eigenvalues of H = p^2 + ix|x|.

On each half line the Schrödinger equation is a parabolic cylinder equation.
Matching the decaying solutions at x = 0 reduces to

    F(E) = e^{i pi/8} G(E e^{-i pi/4}) + e^{-i pi/8} G(E e^{i pi/4}) = 0,
    G(w) = Gamma(3/4 - w/4) / Gamma(1/4 - w/4),

whose two terms are complex conjugates for real E, so F is real there.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .contour import zero_polylines
from .errors import PreconditionError
from .records import DEDUP_RADIUS, EigenvalueRecord, PotentialParams, dedup_sorted, make_records
from .specfun import gamma_ratio, gamma_ratio_masked

log = logging.getLogger(__name__)

IX_ABS_X = PotentialParams(1.0, 1.0)
DEFAULT_REAL_WINDOW = (0.0, 30.0)
DEFAULT_N_SCAN = 3000
DEFAULT_COMPLEX_WINDOW = (0.0, 20.0, -15.0, 15.0)
DEFAULT_TOL = 1e-10

_ROT = np.exp(-0.25j * np.pi)
_PH = np.exp(0.125j * np.pi)


@dataclass
class SecularSample:
    energy: complex
    value: complex


@dataclass
class ContourGrid:
    re_min: float
    re_max: float
    im_min: float
    im_max: float
    n_re: int
    n_im: int
    re_values: np.ndarray
    im_values: np.ndarray
    re_zero_curves: list = field(default_factory=list)
    im_zero_curves: list = field(default_factory=list)

    @property
    def window(self) -> tuple[float, float, float, float]:
        return (self.re_min, self.re_max, self.im_min, self.im_max)

    @property
    def re_axis(self) -> np.ndarray:
        return np.linspace(self.re_min, self.re_max, self.n_re)

    @property
    def im_axis(self) -> np.ndarray:
        return np.linspace(self.im_min, self.im_max, self.n_im)

    @property
    def cell_diagonal(self) -> float:
        dx = (self.re_max - self.re_min) / max(self.n_re - 1, 1)
        dy = (self.im_max - self.im_min) / max(self.n_im - 1, 1)
        return float(np.hypot(dx, dy))


def _secular(E, ratio):
    E = np.asarray(E, dtype=complex)
    w1 = 0.25 * E * _ROT
    w2 = 0.25 * E * _ROT.conjugate()
    return _PH * ratio(0.75 - w1, 0.25 - w1) + _PH.conjugate() * ratio(0.75 - w2, 0.25 - w2)


def secular_exact(E):
    """F(E) for scalar or array E; raises GammaPoleError at a pole of F."""
    out = _secular(E, gamma_ratio)
    return complex(out) if np.ndim(E) == 0 else out


def secular_exact_masked(E):
    """Array version of `secular_exact` with NaN at poles instead of raising."""
    E = np.asarray(E, dtype=complex)
    return _secular(E.ravel(), gamma_ratio_masked).reshape(E.shape)


def sample(E) -> SecularSample:
    return SecularSample(complex(E), secular_exact(E))


def real_roots_exact(
    e_min: float = DEFAULT_REAL_WINDOW[0],
    e_max: float = DEFAULT_REAL_WINDOW[1],
    n_scan: int = DEFAULT_N_SCAN,
    tol: float = DEFAULT_TOL,
) -> list[EigenvalueRecord]:
    """Real eigenvalues in [e_min, e_max] from sign changes of Re F."""
    if not e_min < e_max:
        raise PreconditionError(f"e_min < e_max required, got [{e_min}, {e_max}]")
    if n_scan < 2:
        raise PreconditionError("n_scan >= 2 required")
    if not tol > 0:
        raise PreconditionError("tol > 0 required")

    grid = np.linspace(e_min, e_max, n_scan)
    f = secular_exact(grid).real

    def re_f(e):
        return secular_exact(e).real

    roots = []
    for k in range(n_scan - 1):
        if f[k] == 0.0:
            roots.append(grid[k])
        elif f[k] * f[k + 1] < 0:
            roots.append(brentq(re_f, grid[k], grid[k + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps))
    if f[-1] == 0.0:
        roots.append(grid[-1])

    found = []
    for r in dedup_sorted(complex(r) for r in roots):
        res = abs(secular_exact(r.real))
        if res <= tol:
            found.append((complex(r.real, 0.0), res))
        else:
            log.debug("dropping real bracket at %r with residual %.3g", r.real, res)
    settings = {"e_min": e_min, "e_max": e_max, "n_scan": n_scan, "tol": tol}
    return make_records(found, "exact-secular", tol, IX_ABS_X, settings)


class NewtonDiagnostics:
    """Counts seeds that were tried, converged, or dropped."""

    def __init__(self):
        self.seeds = 0
        self.converged = 0
        self.dropped = 0

    def __repr__(self):
        return f"NewtonDiagnostics(seeds={self.seeds}, converged={self.converged}, dropped={self.dropped})"


def newton_polish(E0: complex, tol: float = DEFAULT_TOL, max_iter: int = 60) -> complex | None:
    """Complex Newton iteration on F with a central-difference derivative.

    Returns None when the iteration hits a pole, leaves the finite plane, or
    does not reach |F| <= tol.
    """
    E = complex(E0)
    try:
        f = secular_exact(E)
        polished = False
        for _ in range(max_iter):
            if abs(f) <= tol and polished:
                return E
            h = 1e-6 * max(1.0, abs(E))
            df = (secular_exact(E + h) - secular_exact(E - h)) / (2 * h)
            if df == 0 or not np.isfinite(df):
                return None
            step = f / df
            if abs(f) <= tol:
                # one extra step once converged, kept only if it helps
                polished = True
                f_new = secular_exact(E - step)
                if abs(f_new) < abs(f):
                    E, f = E - step, f_new
                continue
            E = E - step
            if not np.isfinite(E):
                return None
            f = secular_exact(E)
    except (ArithmeticError, ValueError):
        return None
    return E if abs(f) <= tol else None


def _check_window(window, n_re, n_im, min_count):
    re_min, re_max, im_min, im_max = map(float, window)
    if not (re_min < re_max and im_min < im_max):
        raise PreconditionError(f"window must satisfy re_min < re_max and im_min < im_max, got {window}")
    if n_re < min_count or n_im < min_count:
        raise PreconditionError(f"grid counts must be >= {min_count}, got {n_re}x{n_im}")
    return re_min, re_max, im_min, im_max


def _grid_values(re_min, re_max, im_min, im_max, n_re, n_im):
    x = np.linspace(re_min, re_max, n_re)
    y = np.linspace(im_min, im_max, n_im)
    E = x[:, None] + 1j * y[None, :]
    F = secular_exact_masked(E)
    # F is real on the real axis by construction; remove rounding noise there
    on_axis = y == 0.0
    F[:, on_axis] = F[:, on_axis].real + 0j
    return x, y, F


def complex_roots_exact(
    window=DEFAULT_COMPLEX_WINDOW,
    n_re: int = 200,
    n_im: int = 200,
    tol: float = DEFAULT_TOL,
    diagnostics: NewtonDiagnostics | None = None,
) -> list[EigenvalueRecord]:
    """All eigenvalues in a complex window, paired with their conjugates.

    Every grid cell whose corners show a sign change of both Re F and Im F
    seeds a Newton iteration from the cell centre.
    """
    re_min, re_max, im_min, im_max = _check_window(window, n_re, n_im, 8)
    if not tol > 0:
        raise PreconditionError("tol > 0 required")
    diag = diagnostics if diagnostics is not None else NewtonDiagnostics()
    x, y, F = _grid_values(re_min, re_max, im_min, im_max, n_re, n_im)

    def changes(v):
        corners = np.stack([v[:-1, :-1], v[1:, :-1], v[:-1, 1:], v[1:, 1:]])
        pos = (corners >= 0).sum(axis=0)
        return (pos > 0) & (pos < 4) & ~np.isnan(corners).any(axis=0)

    cells = np.argwhere(changes(F.real) & changes(F.imag))
    roots = []
    for i, j in cells:
        diag.seeds += 1
        seed = complex(0.5 * (x[i] + x[i + 1]), 0.5 * (y[j] + y[j + 1]))
        r = newton_polish(seed, tol)
        if r is None or not (re_min <= r.real <= re_max and im_min <= r.imag <= im_max):
            diag.dropped += 1
            continue
        diag.converged += 1
        if abs(r.imag) < 1e-10 and abs(secular_exact(r.real)) <= tol:
            r = complex(r.real, 0.0)
        roots.append(r)
        if r.imag != 0.0:
            roots.append(r.conjugate())

    found = [(r, abs(secular_exact(r))) for r in dedup_sorted(roots, DEDUP_RADIUS)]
    log.debug("complex_roots_exact: %r", diag)
    settings = {"window": [re_min, re_max, im_min, im_max], "n_re": n_re, "n_im": n_im, "tol": tol}
    return make_records(found, "exact-secular", tol, IX_ABS_X, settings)


def contour_grid(window=DEFAULT_COMPLEX_WINDOW, n_re: int = 201, n_im: int = 201) -> ContourGrid:
    """Re F and Im F on a grid, with their zero polylines."""
    re_min, re_max, im_min, im_max = _check_window(window, n_re, n_im, 2)
    x, y, F = _grid_values(re_min, re_max, im_min, im_max, n_re, n_im)
    re_vals = F.real.copy()
    im_vals = F.imag.copy()
    return ContourGrid(
        re_min, re_max, im_min, im_max, n_re, n_im,
        re_vals, im_vals,
        zero_polylines(re_vals, x, y),
        zero_polylines(im_vals, x, y),
    )

"""Real eigenvalues of H = p^2 + (ix)^a |x|^b by shooting on the real axis.

The decaying solution on x > 0 is integrated inward from a truncation radius
with classical RK4 on (psi, psi'). Because V(-x) = conj V(x), for real E the
function conj(psi_+(-x)) is the decaying solution on x < 0, so matching at the
origin needs only one integration. The Wronskian of the two half-line
solutions,

    W(E) = 2 Re[conj(psi_+(0)) psi_+'(0)] / (|psi_+(0)|^2 + |psi_+'(0)|^2),

is real and vanishes exactly at eigenvalues.

Integration is vectorized over energies: every routine below accepts an array
of E and integrates all of them in lockstep.
"""
from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .errors import NumericalFailure, PreconditionError
from .records import DEDUP_RADIUS, EigenvalueRecord, PotentialParams, dedup_sorted, make_records

log = logging.getLogger(__name__)

MIN_ACTION = 30.0
RENORM_THRESHOLD = 1e100
DEFAULT_N_SCAN = 2000
DEFAULT_TOL_ROOT = 1e-8
DEFAULT_TOL_RESIDUAL = 1e-5
# step <= STEP_FRACTION * x_max and <= WAVE_STEP / sqrt(max |E|)
STEP_FRACTION = 1e-3
WAVE_STEP = 0.03
GRADED_SPAN = 16
GRADED_NODES = 64
GRADED_POWER = 4


def potential(x, params: PotentialParams):
    """(ix)^a |x|^b on the real axis, principal branch: e^{i sgn(x) a pi/2} |x|^(a+b)."""
    x = np.asarray(x, dtype=float)
    out = np.exp(1j * np.sign(x) * params.a * np.pi / 2) * np.abs(x) ** (params.a + params.b)
    out = np.where(x == 0.0, 0j, out)
    return complex(out) if out.ndim == 0 else out


def wkb_action(params: PotentialParams, x: float) -> float:
    """Real part of the decay exponent (2/(a+b+2)) i^{a/2} x^{(a+b+2)/2}."""
    p = params.a + params.b
    return 2.0 / (p + 2.0) * math.cos(params.a * math.pi / 4) * x ** ((p + 2.0) / 2.0)


def _action_radius(params: PotentialParams, action: float) -> float:
    p = params.a + params.b
    return (action * (p + 2.0) / (2.0 * math.cos(params.a * math.pi / 4))) ** (2.0 / (p + 2.0))


def _energy_action_radius(params: PotentialParams, energy: float, action: float) -> float:
    """Smallest x with int_0^x Re sqrt(V(t) - E) dt >= action."""
    x_hi = max(_action_radius(params, action), 1.0)
    while True:
        t = np.linspace(0.0, x_hi, 20001)
        q = np.sqrt(potential(t, params) - energy).real
        s = cumulative_trapezoid(np.abs(q), t, initial=0.0)
        if s[-1] >= action:
            return float(t[np.argmax(s >= action)])
        x_hi *= 2.0


def default_x_max(params: PotentialParams, e_max: float = 0.0, action: float = MIN_ACTION) -> float:
    """Truncation radius where the decaying solution is suppressed by e^{-action}.

    Uses the larger of the radius where the asymptotic action reaches
    `action` and the radius where the action measured with the energy
    `e_max` included does.
    """
    x_a = _action_radius(params, action)
    x_e = _energy_action_radius(params, max(e_max, 0.0), action)
    return max(x_a, x_e)


@dataclass(frozen=True)
class ShootConfig:
    x_max: float
    step: float
    e_min: float = 0.0
    e_max: float = 20.0
    n_scan: int = DEFAULT_N_SCAN
    tol_root: float = DEFAULT_TOL_ROOT
    tol_residual: float = DEFAULT_TOL_RESIDUAL

    @classmethod
    def for_params(
        cls,
        params: PotentialParams,
        e_min: float = 0.0,
        e_max: float = 20.0,
        n_scan: int = DEFAULT_N_SCAN,
        tol_root: float = DEFAULT_TOL_ROOT,
        tol_residual: float = DEFAULT_TOL_RESIDUAL,
        x_max: float | None = None,
        step: float | None = None,
    ) -> "ShootConfig":
        params.validate()
        if x_max is None:
            x_max = default_x_max(params, e_max)
        if step is None:
            e_scale = max(abs(e_min), abs(e_max), 1.0)
            step = min(STEP_FRACTION * x_max, WAVE_STEP / math.sqrt(e_scale))
        return cls(x_max, step, e_min, e_max, n_scan, tol_root, tol_residual)

    def validate(self, params: PotentialParams | None = None) -> "ShootConfig":
        if not (self.x_max > 0 and self.step > 0):
            raise PreconditionError("x_max > 0 and step > 0 required")
        if not self.e_min < self.e_max:
            raise PreconditionError(f"e_min < e_max required, got [{self.e_min}, {self.e_max}]")
        if self.n_scan < 2:
            raise PreconditionError("n_scan >= 2 required")
        if not (self.tol_root > 0 and self.tol_residual > 0):
            raise PreconditionError("tolerances must be positive")
        if params is not None and wkb_action(params, self.x_max) < MIN_ACTION * (1 - 1e-9):
            raise PreconditionError(
                f"x_max={self.x_max} too small: asymptotic action {wkb_action(params, self.x_max):.3g} < {MIN_ACTION}"
            )
        return self

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class WaveState:
    """psi and psi' at position x; arrays when integrated over several energies.

    The true solution is (psi, dpsi) * exp(log_scale).
    """

    x: float
    psi: np.ndarray
    dpsi: np.ndarray
    log_scale: np.ndarray


def initial_state(params: PotentialParams, E, x0: float, side: str = "plus", psi0: float = 1.0) -> WaveState:
    """Decaying WKB data at the truncation point: psi' = -Q psi, Q = i^{a/2} x^{(a+b)/2}.

    On side "minus" (x0 < 0) the PT-reflected data psi' = +conj(Q(|x0|)) psi is used.
    """
    if not params.a < 2:
        raise PreconditionError(f"a < 2 required, got a={params.a}")
    if side not in ("plus", "minus"):
        raise PreconditionError(f"side must be 'plus' or 'minus', got {side!r}")
    if (side == "plus") != (x0 > 0):
        raise PreconditionError(f"x0={x0} does not lie on side {side!r}")
    E = np.atleast_1d(np.asarray(E, dtype=complex))
    q = np.exp(0.25j * np.pi * params.a) * abs(x0) ** ((params.a + params.b) / 2.0)
    slope = -q if side == "plus" else q.conjugate()
    psi = np.full(E.shape, psi0, dtype=complex)
    return WaveState(float(x0), psi, slope * psi, np.zeros(E.shape))


def _nodes(config: ShootConfig, side: str) -> np.ndarray:
    """Uniform nodes down to GRADED_SPAN steps from the origin, graded below that.

    |x|^(a+b) is not smooth at 0 for non-even a+b; the graded tail keeps
    RK4 at full order there. All node spacings scale with `step`.
    """
    h = config.step
    span = min(GRADED_SPAN * h, config.x_max)
    n = max(1, math.ceil((config.x_max - span) / h - 1e-9))
    outer = np.linspace(config.x_max, span, n + 1)
    inner = span * (np.arange(GRADED_NODES, -1, -1) / GRADED_NODES) ** GRADED_POWER
    x = np.concatenate([outer, inner[1:]]) if span < config.x_max else inner
    x[-1] = 0.0
    return x if side == "plus" else -x


def integrate_halfline(
    params: PotentialParams,
    E,
    config: ShootConfig,
    side: str = "plus",
    psi0: float = 1.0,
) -> WaveState:
    """Integrate psi'' = (V - E) psi from x = +-x_max inward to x = 0 with RK4.

    The decaying solution grows in the direction of integration, so any
    admixture of the growing one dies away. Components are rescaled by a
    recorded positive factor whenever |psi| exceeds 1e100.
    """
    xs = _nodes(config, side)
    state = initial_state(params, E, xs[0], side, psi0)
    psi, dpsi, log_scale = state.psi, state.dpsi, state.log_scale
    E = np.atleast_1d(np.asarray(E, dtype=complex))

    v_nodes = potential(xs, params)
    v_mid = potential(0.5 * (xs[:-1] + xs[1:]), params)
    hs = np.diff(xs)
    for k in range(len(hs)):
        h = hs[k]
        f0 = v_nodes[k] - E
        fm = v_mid[k] - E
        f1 = v_nodes[k + 1] - E
        k1p, k1d = dpsi, f0 * psi
        k2p = dpsi + 0.5 * h * k1d
        k2d = fm * (psi + 0.5 * h * k1p)
        k3p = dpsi + 0.5 * h * k2d
        k3d = fm * (psi + 0.5 * h * k2p)
        k4p = dpsi + h * k3d
        k4d = f1 * (psi + h * k3p)
        psi = psi + (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        dpsi = dpsi + (h / 6.0) * (k1d + 2.0 * k2d + 2.0 * k3d + k4d)
        if k % 8 == 7:
            big = np.abs(psi) > RENORM_THRESHOLD
            if big.any():
                s = np.abs(psi[big])
                psi[big] /= s
                dpsi[big] /= s
                log_scale[big] += np.log(s)
    if not (np.all(np.isfinite(psi)) and np.all(np.isfinite(dpsi))):
        raise NumericalFailure(f"non-finite wavefunction at x=0 for params={params}")
    return WaveState(0.0, psi, dpsi, log_scale)


def wronskian(params: PotentialParams, E, config: ShootConfig, psi0: float = 1.0) -> np.ndarray:
    """Complex normalized Wronskian of the PT-paired half-line solutions at x = 0."""
    st = integrate_halfline(params, E, config, "plus", psi0)
    psi, dpsi = st.psi, st.dpsi
    left, dleft = psi.conj(), -dpsi.conj()
    w = left * dpsi - dleft * psi
    return w / (np.abs(psi) ** 2 + np.abs(dpsi) ** 2)


def secular_shoot(params: PotentialParams, E, config: ShootConfig, psi0: float = 1.0):
    """Real matching function whose zeros are the real eigenvalues."""
    scalar = np.ndim(E) == 0
    w = wronskian(params, np.asarray(E, dtype=float), config, psi0).real
    return float(w[0]) if scalar else w


def _bisect_all(params, config, lo, hi, f_lo):
    lo, hi, f_lo = lo.copy(), hi.copy(), f_lo.copy()
    while np.any(hi - lo > config.tol_root):
        mid = 0.5 * (lo + hi)
        f_mid = secular_shoot(params, mid, config)
        left = np.sign(f_mid) == np.sign(f_lo)
        lo = np.where(left, mid, lo)
        f_lo = np.where(left, f_mid, f_lo)
        hi = np.where(left, hi, mid)
    return 0.5 * (lo + hi)


def find_real_eigenvalues(params: PotentialParams, config: ShootConfig) -> list[EigenvalueRecord]:
    """Scan W over [e_min, e_max], bisect every sign change, keep roots with |W| <= tol_residual."""
    params.validate()
    config.validate(params)
    grid = np.linspace(config.e_min, config.e_max, config.n_scan)
    w = secular_shoot(params, grid, config)
    brackets = np.nonzero(np.sign(w[:-1]) * np.sign(w[1:]) < 0)[0]
    exact_zeros = grid[w == 0.0]
    found = list(exact_zeros)
    if brackets.size:
        found.extend(_bisect_all(params, config, grid[brackets], grid[brackets + 1], w[brackets]))
    found = np.array(sorted(found), dtype=float)
    res = np.abs(secular_shoot(params, found, config)) if found.size else np.array([])
    kept = []
    for e, r in zip(found, res):
        if r <= config.tol_residual:
            kept.append(complex(e))
        else:
            log.debug("rejecting bracket at E=%.8g: |W|=%.3g", e, r)
    roots = dedup_sorted(kept, DEDUP_RADIUS)
    res_map = dict(zip(found, res))
    pairs = [(z, res_map[z.real]) for z in roots]
    settings = dict(config.to_dict(), a=params.a, b=params.b)
    return make_records(pairs, "shooting", config.tol_residual, params, settings)

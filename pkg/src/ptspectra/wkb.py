"""WKB helpers: the asymptotic decay exponent and the Hermitian (a = 0) quantization estimate."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .errors import PreconditionError
from .records import PotentialParams


@dataclass(frozen=True)
class TurningPoints:
    x1: float
    x2: float


def turning_points(b: float, E: float) -> TurningPoints:
    """Roots of |x|^b = E."""
    if not (b > 0 and E > 0):
        raise PreconditionError("b > 0 and E > 0 required")
    x2 = E ** (1.0 / b)
    return TurningPoints(-x2, x2)


def decay_exponent(params: PotentialParams, x: float) -> complex:
    """(2/(a+b+2)) i^{a/2} x^{(a+b+2)/2}; psi ~ exp(-this) is the decaying branch as x -> +inf."""
    if not x > 0:
        raise PreconditionError(f"x > 0 required, got {x}")
    if not abs(params.a) < 2:
        raise PreconditionError(f"|a| < 2 required for a decaying real-axis solution, got a={params.a}")
    p = params.a + params.b
    return 2.0 / (p + 2.0) * np.exp(0.25j * np.pi * params.a) * x ** ((p + 2.0) / 2.0)


def _check(b, n):
    if not b > 0:
        raise PreconditionError(f"b > 0 required, got {b}")
    if n < 0 or int(n) != n:
        raise PreconditionError(f"n must be a nonnegative integer, got {n}")


def wkb_estimate(b: float, n: int) -> float:
    """E_n solving int_{x1}^{x2} sqrt(E - |x|^b) dx = (n + 1/2) pi, in closed form.

    The integral equals 2 E^{(b+2)/(2b)} Gamma(1/b) Gamma(3/2) / (b Gamma(3/2 + 1/b)).
    """
    _check(b, n)
    lhs = (n + 0.5) * math.pi * b * math.exp(
        math.lgamma(1.5 + 1.0 / b) - math.lgamma(1.0 / b) - math.lgamma(1.5)
    ) / 2.0
    return lhs ** (2.0 * b / (b + 2.0))


def action_integral(b: float, E: float) -> float:
    """int_{x1}^{x2} sqrt(E - |x|^b) dx by adaptive quadrature."""
    x2 = turning_points(b, E).x2
    val, _ = quad(lambda x: math.sqrt(max(E - x ** b, 0.0)), 0.0, x2, epsabs=0.0, epsrel=1e-13, limit=200)
    return 2.0 * val


def wkb_estimate_quadrature(b: float, n: int) -> float:
    """Same as `wkb_estimate`, by inverting the quadrature of the action integral."""
    _check(b, n)
    target = (n + 0.5) * math.pi
    hi = 1.0
    while action_integral(b, hi) < target:
        hi *= 2.0
    return brentq(lambda e: action_integral(b, e) - target, hi / 2.0 if hi > 1 else 1e-12, hi,
                  xtol=1e-15, rtol=4 * np.finfo(float).eps)

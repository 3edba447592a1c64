import math

import numpy as np
import pytest

from conftest import SEED
from ptspectra.errors import PreconditionError
from ptspectra.records import PotentialParams as P
from ptspectra.shoot import ShootConfig, find_real_eigenvalues
from ptspectra.wkb import decay_exponent, turning_points, wkb_estimate, wkb_estimate_quadrature


def test_decay_exponent_examples():
    assert decay_exponent(P(0, 2), 3.0) == pytest.approx(4.5)
    assert decay_exponent(P(1, 1), 1.0) == pytest.approx(0.5 * np.exp(0.25j * np.pi))
    assert decay_exponent(P(0, 1), 4.0) == pytest.approx(16 / 3)


def test_decay_exponent_has_positive_real_part():
    for a in np.linspace(-1.9, 1.9, 11):
        assert decay_exponent(P(a, 1.0), 2.0).real > 0


def test_decay_exponent_preconditions():
    with pytest.raises(PreconditionError):
        decay_exponent(P(2.0, 1.0), 1.0)
    with pytest.raises(PreconditionError):
        decay_exponent(P(1.0, 1.0), -1.0)


def test_turning_points():
    tp = turning_points(1.5, 7.0)
    assert tp.x1 < 0 < tp.x2 and tp.x1 == -tp.x2
    assert tp.x2 ** 1.5 == pytest.approx(7.0, rel=1e-10)


@pytest.mark.parametrize("n", range(12))
def test_exact_for_harmonic_oscillator(n):
    assert abs(wkb_estimate(2, n) - (2 * n + 1)) <= 1e-12 * (2 * n + 1)


def test_closed_form_matches_quadrature():
    rng = np.random.default_rng(SEED)
    for _ in range(50):
        b = float(rng.uniform(0.3, 6))
        n = int(rng.integers(0, 30))
        assert wkb_estimate(b, n) == pytest.approx(wkb_estimate_quadrature(b, n), rel=1e-8)


def test_preconditions():
    with pytest.raises(PreconditionError):
        wkb_estimate(0, 1)
    with pytest.raises(PreconditionError):
        wkb_estimate(1, -1)


@pytest.mark.parametrize("b", [1.0, 1.5, 2.5, 3.0])
def test_relative_error_shrinks_with_n(b):
    p = P(0, b)
    e_top = wkb_estimate(b, 10) * 1.05
    levels = [r.value.real for r in find_real_eigenvalues(p, ShootConfig.for_params(p, 0, e_top))]
    assert len(levels) >= 11
    err = [abs(wkb_estimate(b, n) - levels[n]) / levels[n] for n in range(2, 11)]
    for e0, e1 in zip(err, err[1:]):
        assert e1 <= e0 + 1e-3


def test_tenth_airy_level():
    # the 10th level of |x| is -a'_5 = 7.944134; WKB lands within 0.1%
    assert math.isclose(wkb_estimate(1, 9), 7.944134, rel_tol=1e-3)

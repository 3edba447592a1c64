import numpy as np
import pytest

from conftest import SEED
from ptspectra.exact import (
    NewtonDiagnostics,
    complex_roots_exact,
    real_roots_exact,
    sample,
    secular_exact,
)
from ptspectra.errors import PreconditionError


def test_secular_at_known_root():
    assert abs(secular_exact(1.258092)) <= 1e-5


def test_secular_at_zero(exact_fixture):
    # both terms reduce to conjugate constants: 2 cos(pi/8) Gamma(3/4)/Gamma(1/4)
    expected = 2 * np.cos(np.pi / 8) * exact_fixture["gamma_ratio_3q_1q"]
    assert expected == pytest.approx(exact_fixture["f_at_zero"], rel=1e-14)
    assert secular_exact(0) == pytest.approx(expected, rel=1e-13)


def test_sample_record():
    s = sample(2.0)
    assert s.energy == 2.0 and s.value == secular_exact(2.0)
    assert abs(s.value.imag) <= 1e-10 * max(1, abs(s.value))


def test_conjugate_symmetry():
    rng = np.random.default_rng(SEED)
    r = 30 * np.sqrt(rng.uniform(0, 1, 1000))
    E = r * np.exp(2j * np.pi * rng.uniform(0, 1, 1000))
    # keep away from the poles at (3 + 4k) e^{+-i pi/4}
    poles = np.array([(3 + 4 * k) * np.exp(s * 0.25j * np.pi) for k in range(8) for s in (1, -1)])
    E = E[np.min(np.abs(E[:, None] - poles[None, :]), axis=1) > 1e-3]
    F = secular_exact(E)
    Fc = secular_exact(E.conj())
    assert (np.abs(Fc - F.conj()) / np.abs(F)).max() <= 1e-12


def test_real_axis_reality():
    rng = np.random.default_rng(SEED + 1)
    E = rng.uniform(0, 50, 1000)
    F = secular_exact(E)
    assert np.all(np.abs(F.imag) <= 1e-10 * np.maximum(1, np.abs(F)))


def test_single_real_root(exact_fixture):
    recs = real_roots_exact(0, 30, 3000, 1e-10)
    assert len(recs) == 1
    rec = recs[0]
    assert rec.value.real == pytest.approx(1.258092, abs=1e-5)
    assert rec.value.real == pytest.approx(exact_fixture["real_root"], abs=1e-12)
    assert rec.method == "exact-secular" and rec.index == 0
    assert rec.residual <= rec.tolerance


def test_no_real_root_above_two():
    assert real_roots_exact(2, 30, 3000, 1e-10) == []


def test_narrow_window():
    recs = real_roots_exact(1.25, 1.27, 10, 1e-10)
    assert [round(r.value.real, 6) for r in recs] == [1.258092]


def test_real_scan_refinement_stability():
    a = real_roots_exact(0, 30, 3000)[0].value
    b = real_roots_exact(0, 30, 6000)[0].value
    assert abs(a - b) <= 1e-8


@pytest.mark.parametrize("args", [(5, 1, 100, 1e-10), (0, 1, 1, 1e-10), (0, 1, 10, 0)])
def test_real_roots_preconditions(args):
    with pytest.raises(PreconditionError):
        real_roots_exact(*args)


@pytest.fixture(scope="module")
def complex_roots():
    diag = NewtonDiagnostics()
    return complex_roots_exact((0, 20, -15, 15), 200, 200, 1e-10, diag), diag


def test_complex_roots_match_dense_grid_oracle(complex_roots, exact_fixture):
    recs, _ = complex_roots
    expected = [complex(*z) for z in exact_fixture["roots"]]
    got = [r.value for r in recs]
    assert len(got) == len(expected)
    for z in expected:
        assert min(abs(z - g) for g in got) <= 1e-8


def test_complex_roots_pairing(complex_roots):
    recs, diag = complex_roots
    values = [r.value for r in recs]
    tol = recs[0].tolerance
    for z in values:
        if z.imag != 0:
            assert min(abs(z.conjugate() - w) for w in values) <= 2 * tol
    assert diag.seeds == diag.converged + diag.dropped


def test_complex_roots_single_real(complex_roots):
    recs, _ = complex_roots
    real = [r for r in recs if abs(r.value.imag) <= 1e-6]
    assert len(real) == 1
    assert real[0].value.real == pytest.approx(1.258092, abs=1e-5)


def test_complex_records_sorted_deduplicated_and_within_tolerance(complex_roots):
    recs, _ = complex_roots
    keys = [(r.value.real, r.value.imag) for r in recs]
    assert keys == sorted(keys)
    assert [r.index for r in recs] == list(range(len(recs)))
    for i, r in enumerate(recs):
        assert abs(secular_exact(r.value)) <= r.tolerance
        for s in recs[i + 1:]:
            assert abs(r.value - s.value) > 1e-6


def test_complex_grid_refinement_stability(complex_roots):
    recs, _ = complex_roots
    finer = complex_roots_exact((0, 20, -15, 15), 400, 400, 1e-10)
    assert len(finer) == len(recs)
    for a, b in zip(recs, finer):
        assert abs(a.value - b.value) <= 1e-8


def test_complex_window_preconditions():
    with pytest.raises(PreconditionError):
        complex_roots_exact((0, 20, -15, 15), 4, 200)
    with pytest.raises(PreconditionError):
        complex_roots_exact((20, 0, -15, 15), 20, 20)

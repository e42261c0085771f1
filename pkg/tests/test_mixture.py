import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, stats

from deficiency_lab.mixture import (
    DEFAULT_PRUNE_LOG_TOL,
    MixtureDensity,
    cf,
    chebyshev_check,
    convolve,
    evaluate_log,
    l2_inner,
    log_mgf,
    log_tail_prob,
    n_fold,
    tail_prob,
    tilt,
)

from conftest import mixtures, sorted_components

N01 = MixtureDensity.gaussian(0.0, 1.0)
FAST = settings(max_examples=60, deadline=None)


# ---------------------------------------------------------------- construction


def test_rejects_bad_components():
    with pytest.raises(ValueError):
        MixtureDensity([0.0], [0.0], [0.0])
    with pytest.raises(ValueError):
        MixtureDensity([math.inf], [0.0], [1.0])
    with pytest.raises(ValueError):
        MixtureDensity([0.0, 1.0], [0.0], [1.0])
    with pytest.raises(ValueError):
        MixtureDensity([], [], [])


def test_arrays_are_read_only():
    with pytest.raises(ValueError):
        N01.means[0] = 3.0


def test_json_round_trip_is_exact():
    mix = MixtureDensity([-0.1, -2.3], [0.1, 1 / 3], [0.7, math.pi])
    back = MixtureDensity.from_json(mix.to_json())
    assert np.array_equal(back.log_weights, mix.log_weights)
    assert np.array_equal(back.means, mix.means)
    assert np.array_equal(back.stds, mix.stds)
    json.loads(mix.to_json())


# ---------------------------------------------------------------- evaluation


def test_log_density_at_mode():
    assert evaluate_log(N01, 0.0) == pytest.approx(-0.9189385332046727, abs=1e-12)


def test_log_density_far_tail_does_not_underflow():
    assert evaluate_log(N01, 40.0) == pytest.approx(-0.9189385332046727 - 800.0, abs=1e-9)


def test_two_component_log_sum_exp():
    mix = MixtureDensity([math.log(0.5)] * 2, [-1.0, 1.0], [1.0, 1.0])
    assert evaluate_log(mix, 0.0) == pytest.approx(stats.norm.logpdf(1.0), abs=1e-12)


@given(mixtures(), st.floats(-20, 20))
@FAST
def test_evaluate_matches_scipy_oracle(mix, x):
    w, m, s = sorted_components(mix)
    ref = float(np.sum(w * stats.norm.pdf(x, m, s)))
    if ref > 1e-280:
        assert math.exp(evaluate_log(mix, x)) == pytest.approx(ref, rel=1e-10)


# ---------------------------------------------------------------- convolution


def test_gaussian_convolution_identity():
    out = convolve(N01, N01)
    assert len(out) == 1
    assert out.means[0] == 0.0
    assert out.stds[0] == pytest.approx(math.sqrt(2.0), abs=1e-15)


def test_n_fold_examples():
    assert n_fold(N01, 1) is N01
    three = n_fold(MixtureDensity.gaussian(1.0, 1.0), 3)
    assert (three.means[0], three.stds[0]) == pytest.approx((3.0, math.sqrt(3.0)))
    with pytest.raises(ValueError):
        n_fold(N01, 0)


def test_dedup_keeps_lattice_self_convolution_linear():
    j = np.arange(-20, 21, dtype=float)
    lat = MixtureDensity(np.zeros_like(j), j, np.ones_like(j))
    assert len(convolve(lat, lat, -math.inf)) == 81
    assert len(n_fold(lat, 3, -math.inf)) == 121


def test_pruning_tracks_dropped_mass():
    mix = MixtureDensity([0.0, -50.0], [0.0, 5.0], [1.0, 1.0])
    out = convolve(mix, mix, prune_log_tol=-20.0)
    assert len(out) == 1
    expected = math.log(2 * math.exp(-50.0) + math.exp(-100.0))
    assert out.pruned_log_mass == pytest.approx(expected, rel=1e-12)
    with pytest.raises(ValueError):
        convolve(mix, mix, prune_log_tol=1.0)


@given(mixtures(), mixtures())
@FAST
def test_mass_conservation(a, b):
    out = convolve(a, b, -math.inf)
    assert out.total_mass == pytest.approx(a.total_mass * b.total_mass, rel=1e-12)


@given(mixtures(normalized=True), mixtures(normalized=True), st.sampled_from([-1.0, 0.0, 0.3, 0.55, 1.0]))
@FAST
def test_mgf_multiplicative(a, b, u):
    lhs = log_mgf(convolve(a, b), u)
    assert lhs == pytest.approx(log_mgf(a, u) + log_mgf(b, u), abs=1e-10)


@given(mixtures(normalized=True), mixtures(normalized=True))
@FAST
def test_cf_multiplicative(a, b):
    s = np.linspace(-50, 50, 201)
    assert np.max(np.abs(cf(convolve(a, b), s) - cf(a, s) * cf(b, s))) < 1e-10


# ---------------------------------------------------------------- transforms


def test_standard_normal_transforms():
    assert log_mgf(N01, 1.0) == pytest.approx(0.5, abs=1e-15)
    s = np.array([0.0, 0.7, 2.0])
    np.testing.assert_allclose(cf(N01, s), np.exp(-s * s / 2), atol=1e-15)
    assert cf(N01, 2.0).real == pytest.approx(0.1353352832366127, abs=1e-15)


@given(mixtures())
@FAST
def test_cf_at_zero_is_one_after_normalizing(mix):
    assert cf(mix.normalized(), 0.0) == pytest.approx(1.0 + 0j, abs=1e-14)


def test_tilt_standard_normal():
    for t in (-1.0, 0.3, 2.0):
        tilted, lm = tilt(N01, t)
        assert lm == pytest.approx(t * t / 2, abs=1e-14)
        assert tilted.means[0] == pytest.approx(t)
        assert tilted.stds[0] == 1.0


@given(mixtures(normalized=True))
@FAST
def test_tilt_zero_is_identity(mix):
    tilted, lm = tilt(mix, 0.0)
    assert lm == pytest.approx(0.0, abs=1e-14)
    np.testing.assert_allclose(tilted.log_weights, mix.log_weights, atol=1e-14)


@given(mixtures(normalized=True), st.floats(-1, 1))
@FAST
def test_tilt_inverts(mix, t):
    back = tilt(tilt(mix, t)[0], -t)[0]
    for x, y in zip(sorted_components(back), sorted_components(mix)):
        np.testing.assert_allclose(x, y, atol=1e-10)


@given(mixtures(3, normalized=True), mixtures(3, normalized=True), st.floats(-1, 1))
@FAST
def test_tilt_commutes_with_convolution(a, b, t):
    lhs = tilt(convolve(a, b, -math.inf), t)[0]
    rhs = convolve(tilt(a, t)[0], tilt(b, t)[0], -math.inf).normalized()
    for x, y in zip(sorted_components(lhs), sorted_components(rhs)):
        np.testing.assert_allclose(x, y, atol=1e-10)


@given(mixtures(normalized=True), mixtures(normalized=True))
@FAST
def test_l2_inner_matches_quadrature(a, b):
    f = lambda x: math.exp(evaluate_log(a, x) + evaluate_log(b, x))
    ref, _ = integrate.quad(f, -40, 40, points=[-5, 0, 5], limit=400, epsabs=1e-14, epsrel=1e-12)
    assert l2_inner(a, b) == pytest.approx(ref, rel=1e-8, abs=1e-14)


def test_l2_inner_two_gaussians():
    a = MixtureDensity.gaussian(0.0, 1.0)
    b = MixtureDensity.gaussian(4.0, 1.0)
    assert l2_inner(a, b) == pytest.approx(stats.norm.pdf(4.0, 0.0, math.sqrt(2.0)), rel=1e-13)


# ---------------------------------------------------------------- tails


def test_tail_values():
    assert tail_prob(N01, 0.0) == pytest.approx(0.5, abs=1e-15)
    assert tail_prob(N01, 2.0) == pytest.approx(0.022750131948179195, rel=1e-12)


def test_log_tail_stays_finite_far_out():
    for x in (10.0, 20.0, 40.0):
        assert log_tail_prob(N01, x) == pytest.approx(stats.norm.logsf(x), rel=1e-10)


@given(mixtures(normalized=True), st.floats(0.05, 1.0))
@FAST
def test_chebyshev_inequality(mix, lam):
    x = np.linspace(-10, 40, 101)
    assert chebyshev_check(mix, lam, x).all_satisfied


def test_default_prune_tolerance_is_300_decades():
    assert DEFAULT_PRUNE_LOG_TOL == pytest.approx(-300 * math.log(10))

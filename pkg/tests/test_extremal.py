import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate
from scipy.special import logsumexp

from deficiency_lab.extremal import (
    FIG1,
    ExtremalParams,
    build_extremal,
    choose_trunc_J,
    envelope_constant,
    lattice_grid,
    log_mgf_closed_form,
    log_peak_values,
    lower_bound_params,
    product_density_eval,
    split_indices,
    split_witness,
    theoretical_K2,
    truncation_tail_bound,
    witness_ratio,
)
from deficiency_lab.mixture import MixtureDensity, evaluate_log, log_mgf


def test_params_validation():
    for bad in (
        dict(lam=0.0, eps=0.1, kappa=1, alpha=1),
        dict(lam=0.5, eps=0.6, kappa=1, alpha=1),
        dict(lam=0.5, eps=0.0, kappa=1, alpha=1),
        dict(lam=0.5, eps=0.5, kappa=0, alpha=1),
        dict(lam=0.5, eps=0.5, kappa=1, alpha=0.5),
        dict(lam=0.5, eps=0.5, kappa=1, alpha=1, trunc_J=0),
    ):
        with pytest.raises(ValueError):
            ExtremalParams(**bad)


def test_params_json_round_trip():
    p = ExtremalParams(0.55, 0.3, 0.9, 0.6, 17)
    assert ExtremalParams.from_json(p.to_json()) == p
    assert p.to_dict()["lambda"] == 0.55
    assert p.mu == pytest.approx(0.25)


def test_component_values():
    mix, log_c = build_extremal(FIG1)
    k = int(np.flatnonzero(mix.means == 1.0)[0])
    # w_1 = e^{-0.55} / 2^{0.6} before normalisation; std_1 = 0.9 e^{-0.5}
    assert math.exp(mix.log_weights[k] + log_c) == pytest.approx(0.38064491945798675, rel=1e-13)
    assert mix.stds[k] == pytest.approx(0.54587759374137008, rel=1e-14)
    assert mix.is_normalized


def test_truncation_chooser():
    J = choose_trunc_J(FIG1.lam, FIG1.alpha)
    assert FIG1.J == J == 52
    j = np.arange(1, 2000, dtype=float)
    full = 1 + 2 * np.sum(np.exp(-0.55 * j) / (j * j + 1) ** 0.6)
    part = 1 + 2 * np.sum(np.exp(-0.55 * j[:J]) / (j[:J] ** 2 + 1) ** 0.6)
    assert (full - part) / part < 1e-12
    assert truncation_tail_bound(0.55, 0.6, J) >= full - part


def test_truncation_chooser_refuses_unreachable_target():
    with pytest.raises(ValueError, match="unreachable"):
        choose_trunc_J(0.001, 0.51)


def test_symmetry(fig1_mix):
    x = np.linspace(0, 30, 301)
    np.testing.assert_allclose(evaluate_log(fig1_mix, x), evaluate_log(fig1_mix, -x), atol=1e-12)


def test_peak_dominance(fig1_mix):
    _, log_c = build_extremal(FIG1)
    j = np.arange(10, FIG1.J - 4, dtype=float)
    dev = evaluate_log(fig1_mix, j) + log_c - log_peak_values(FIG1, j)
    assert np.max(np.abs(dev)) <= 0.01


def test_envelope_bound(fig1_mix):
    _, log_c = build_extremal(FIG1)
    x = np.linspace(0, FIG1.J - 5, 20001)
    lhs = evaluate_log(fig1_mix, x) + log_c
    assert np.all(lhs <= math.log(envelope_constant(FIG1)) - FIG1.mu * x + 1e-12)


def test_envelope_fails_above_mu(fig1_mix):
    j = np.arange(20, FIG1.J - 4, dtype=float)
    y = evaluate_log(fig1_mix, j) + (FIG1.mu + 0.1) * j
    assert np.polyfit(j, y, 1)[0] > 0


def test_log_mgf_dual_path(fig1_mix):
    for u in (0.0, 0.1, 0.3, 0.55):
        assert log_mgf_closed_form(FIG1, u) == pytest.approx(log_mgf(fig1_mix, u), abs=1e-12)


def test_log_mgf_proof_bound():
    _, log_c = build_extremal(FIG1)
    j = np.arange(-FIG1.J, FIG1.J + 1, dtype=float)
    bound = 0.5 * (FIG1.lam * FIG1.kappa) ** 2 + logsumexp(-FIG1.alpha * np.log(j * j + 1)) - log_c
    assert log_mgf_closed_form(FIG1, FIG1.lam) <= bound


def test_log_mgf_warns_beyond_lambda():
    with pytest.warns(RuntimeWarning):
        log_mgf_closed_form(FIG1, 0.6)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        log_mgf_closed_form(FIG1, 0.55)


# ---------------------------------------------------------------- index split


def test_split_examples():
    assert split_indices(0, 0.5, 0.5) == (0, 0)
    assert split_indices(5, 0.5, 0.5) == (2, 3)
    assert split_indices(-5, 0.5, 0.5) == (-2, -3)


@given(st.integers(-500, 500), st.floats(0.05, 2.0), st.floats(0.05, 2.0))
@settings(max_examples=300, deadline=None)
def test_split_invariants(m, eps, delta):
    i, j = split_indices(m, eps, delta)
    assert i + j == m
    if m >= 0:
        a, b = m * delta / (eps + delta), m * eps / (eps + delta)
        assert a - 1 - 1e-9 <= i <= a + 1e-9
        assert b - 1e-9 <= j <= b + 1 + 1e-9
    else:
        assert split_indices(-m, eps, delta) == (-i, -j)


@given(st.integers(-200, 200), st.sampled_from([0.2, 0.3, 0.5]), st.sampled_from([0.2, 0.3, 0.5]))
@settings(max_examples=200, deadline=None)
def test_sigma_sandwich(m, eps, delta):
    w = split_witness(m, eps, delta, 0.9, 0.7)
    decay = math.exp(-w.eps_tilde * abs(m))
    assert w.zeta * decay <= w.sigma_m * (1 + 1e-12)
    assert w.sigma_m <= w.zeta_tilde * decay * (1 + 1e-12)
    assert w.zeta_tilde / w.zeta <= math.exp(max(eps, delta)) * (1 + 1e-12)


def test_lower_bound_params_examples():
    et, zeta, zt, ab = lower_bound_params(0.5, 0.5, 0.9, 0.9, 0.6, 0.6)
    assert et == pytest.approx(0.25)
    assert zeta == pytest.approx(1.0526074041867976, rel=1e-14)
    assert zt == pytest.approx(math.sqrt(0.81 * math.e + 0.81))
    assert ab == pytest.approx(1.2)
    assert lower_bound_params(0.2, 0.3, 1, 1, 1, 1)[0] == pytest.approx(0.12)
    with pytest.raises(ValueError):
        lower_bound_params(0.2, 0.3, 1, 1, 0.5, 1)


def test_lattice_grid():
    g = lattice_grid(0, 2, 4)
    np.testing.assert_allclose(g, np.arange(9) / 4)


def test_witness_ratio_gaussian():
    n01 = MixtureDensity.gaussian()
    r, at = witness_ratio(n01, n01, n01, np.linspace(-3, 3, 61))
    # log f_{0,sqrt2}(x) - log f_{0,1}(x) = -log sqrt2 + x^2/4, smallest at 0
    assert r == pytest.approx(-0.5 * math.log(2), abs=1e-12)
    assert at == pytest.approx(0.0, abs=1e-12)


def test_witness_ratio_stabilises(fig1_mix):
    et, zeta, _, ab = lower_bound_params(0.5, 0.5, 0.9, 0.9, 0.6, 0.6)
    ref = build_extremal(ExtremalParams(0.55, et, zeta, ab, 90))[0]
    r40, _ = witness_ratio(fig1_mix, fig1_mix, ref, lattice_grid(0, 40))
    r60, _ = witness_ratio(fig1_mix, fig1_mix, ref, lattice_grid(0, 60))
    assert abs(r60 - r40) < 0.5
    assert r60 <= r40


# ---------------------------------------------------------------- constants


def test_k2_values():
    assert theoretical_K2(1.0, 0.5, 0.5, 2.0, 2.0, 1.0, 1.0) == pytest.approx(8.0)
    a = theoretical_K2(0.55, 0.5, 0.3, 1.7, 2.1, 2.2, 1.3)
    b = theoretical_K2(0.55, 0.3, 0.5, 2.1, 1.7, 1.3, 2.2)
    assert a == pytest.approx(b, rel=1e-15)
    with pytest.raises(ValueError):
        theoretical_K2(0.5, 0.6, 0.3, 1, 1, 1, 1)
    with pytest.raises(ValueError):
        theoretical_K2(0.5, 0.4, 0.3, 0, 1, 1, 1)


def test_envelope_constant_is_peak_sum():
    p = ExtremalParams(0.5, 0.5, 1.0, 1.0, 3)
    j = np.arange(-3, 4, dtype=float)
    ref = np.sum(1 / ((j * j + 1) * math.sqrt(2 * math.pi)))
    assert envelope_constant(p) == pytest.approx(ref, rel=1e-14)


def test_product_density_lift():
    n01 = MixtureDensity.gaussian()
    assert product_density_eval(n01, 0.3) == pytest.approx(math.exp(evaluate_log(n01, 0.3)))
    assert product_density_eval(n01, 0.3, [0.0]) == pytest.approx(
        math.exp(evaluate_log(n01, 0.3)) / math.sqrt(2 * math.pi)
    )
    q = build_extremal(ExtremalParams(0.55, 0.5, 0.9, 0.6, 10))[0]
    for x in (-1.0, 0.0, 2.5):
        marg, _ = integrate.quad(lambda y: product_density_eval(q, x, [y]), -12, 12, epsabs=1e-14)
        assert marg == pytest.approx(math.exp(evaluate_log(q, x)), rel=1e-10)

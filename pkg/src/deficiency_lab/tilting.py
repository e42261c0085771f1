"""Tilted densities: boundedness of n-fold convolutions and CF integrability."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy import integrate as sp_integrate
from scipy.special import logsumexp

from .mixture import DEFAULT_PRUNE_LOG_TOL, LOG_SQRT_2PI, MixtureDensity, cf, evaluate_log, l2_inner, n_fold, tilt

FIT_MARGIN = 0.1
TAIL_FIT_RTOL = 0.10
REFINE_RTOL = 0.01
SPIKE_LOG_FLOOR = math.log(1e-3)


def min_n_for_bounded(lam: float, mu: float, t: float) -> int:
    """n_t = ceil((lam - mu) / (lam - t))."""
    if not 0 <= mu < lam:
        raise ValueError("need 0 <= mu < lambda")
    if not 0 <= t < lam:
        raise ValueError("need 0 <= t < lambda")
    ratio = (lam - mu) / (lam - t)
    # guard against 2.0000000000000004 turning into 3
    return max(1, math.ceil(ratio - 1e-12))


@dataclass(frozen=True)
class TiltReport:
    t: float
    n: int
    n_t: Optional[int]
    sup_density: float
    sup_location: float
    grid_h: float
    refinement_delta: float
    interior: bool
    edge_log_density: tuple[float, float]
    window: tuple[float, float]

    @property
    def bounded(self) -> bool:
        return self.refinement_delta < REFINE_RTOL and self.interior

    def to_dict(self) -> dict:
        d = asdict(self)
        d["edge_log_density"] = list(self.edge_log_density)
        d["window"] = list(self.window)
        d["bounded"] = self.bounded
        return d


def _sup_on(mix: MixtureDensity, lo: float, hi: float, h: float) -> tuple[float, float]:
    n = int(math.floor((hi - lo) / h + 1e-9)) + 1
    grid = lo + h * np.arange(n)
    logp = evaluate_log(mix, grid)
    # only spikes narrower than the grid with a non-negligible own peak can
    # hide between nodes; resolved ones are caught by the refinement check
    own_peak = mix.log_weights - np.log(mix.stds) - LOG_SQRT_2PI
    cand = (
        (mix.means >= lo)
        & (mix.means <= hi)
        & (mix.stds < 2.0 * h)
        & (own_peak >= float(np.max(logp)) + SPIKE_LOG_FLOOR)
    )
    means = np.unique(mix.means[cand])
    if means.size:
        grid = np.concatenate([grid, means])
        logp = np.concatenate([logp, evaluate_log(mix, means)])
    k = int(np.argmax(logp))
    return float(logp[k]), float(grid[k])


def tilted_nfold_sup(
    mix: MixtureDensity,
    t: float,
    n: int,
    window: tuple[float, float],
    h: float,
    lam: Optional[float] = None,
    mu: Optional[float] = None,
    prune_log_tol: float = DEFAULT_PRUNE_LOG_TOL,
) -> TiltReport:
    """Sup of the n-fold convolution of the t-tilted density over a window.

    Candidates are a uniform grid with step ``h`` plus the means of spikes
    narrower than ``2h`` whose own peak reaches 1e-3 of the grid maximum
    (narrow tilted spikes can sit between grid nodes).  The
    search is repeated at ``h/2`` to measure refinement stability.
    """
    tilted = n_fold(tilt(mix, t)[0], n, prune_log_tol)
    lo, hi = window
    log_sup, loc = _sup_on(tilted, lo, hi, h)
    log_sup2, loc2 = _sup_on(tilted, lo, hi, h / 2.0)
    sup, sup2 = math.exp(log_sup), math.exp(log_sup2)
    edges = evaluate_log(tilted, np.array([lo, hi]))
    interior = bool(lo + 2 * h < loc2 < hi - 2 * h)
    n_t = min_n_for_bounded(lam, mu, t) if lam is not None and mu is not None else None
    return TiltReport(
        t=float(t),
        n=int(n),
        n_t=n_t,
        sup_density=sup2,
        sup_location=loc2,
        grid_h=float(h),
        refinement_delta=abs(sup2 - sup) / sup2,
        interior=interior,
        edge_log_density=(float(edges[0]), float(edges[1])),
        window=(float(lo), float(hi)),
    )


class TailFit(NamedTuple):
    exponent: float
    log_amplitude: float


def _log_correction(s: np.ndarray, poly_alpha: float) -> np.ndarray:
    # polynomial lattice weights put a (log s)^(-2 alpha) factor on the CF tail
    return 2.0 * poly_alpha * np.log(np.log(s))


def fit_cf_tail(
    mix: MixtureDensity,
    s_lo: float,
    s_hi: float,
    poly_alpha: float = 0.0,
    n_bins: int = 48,
    per_bin: int = 256,
) -> TailFit:
    """Log-log slope of |f(s)| with the (log s)^(-2 alpha) factor removed.

    |f| oscillates with period ~2 pi in s, so log|f| is averaged over
    uniformly spaced samples inside each of ``n_bins`` log-spaced bins and
    the bin means are regressed on log s.  Returns ``-inf`` when the CF
    underflows over most of the window (faster than any power).
    """
    if not (math.e < s_lo < s_hi):
        raise ValueError("need e < s_lo < s_hi")
    edges = np.geomspace(s_lo, s_hi, n_bins + 1)
    frac = (np.arange(per_bin) + 0.5) / per_bin
    s = edges[:-1, None] + (edges[1:] - edges[:-1])[:, None] * frac
    mag = np.abs(cf(mix, s))
    ok = np.all(mag > 1e-300, axis=1)
    if ok.sum() < n_bins // 2:
        return TailFit(-math.inf, -math.inf)
    s, mag = s[ok], mag[ok]
    y = (np.log(mag) + _log_correction(s, poly_alpha)).mean(axis=1)
    x = np.log(s).mean(axis=1)
    slope, icept = np.polyfit(x, y, 1)
    return TailFit(float(slope), float(icept))


@dataclass(frozen=True)
class CfIntegrabilityReport:
    gamma: float
    partial_integral: float
    S: float
    tail_exponent: float
    converges: bool
    extrapolated_tail: Optional[float]
    fit_margin: float
    poly_alpha: float
    tail_fit_reliable: bool
    half_window_exponents: tuple[float, float]
    far_tail: Optional[float] = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["half_window_exponents"] = list(self.half_window_exponents)
        return d


def _log_tail_amplitude(mix, S, gamma, fit: TailFit, poly_alpha, n_avg=4096) -> float:
    """log of the window mean of |f|^gamma / model, on uniform s in [S/10, S]."""
    s = np.linspace(S / 10.0, S, n_avg)
    model = gamma * (fit.exponent * np.log(s) - _log_correction(s, poly_alpha))
    with np.errstate(divide="ignore"):
        logv = gamma * np.log(np.abs(cf(mix, s))) - model
    return float(logsumexp(logv) - math.log(n_avg))


def _model_tail(S, gamma, fit: TailFit, poly_alpha, log_amp) -> float:
    """2 * amp * integral_S^inf s^(gamma tau) (log s)^(-2 alpha gamma) ds."""
    if fit.exponent == -math.inf or log_amp == -math.inf:
        return 0.0
    p = -gamma * fit.exponent
    q = 2.0 * poly_alpha * gamma
    lnS = math.log(S)
    if q == 0.0:
        log_int = (1.0 - p) * lnS - math.log(p - 1.0)
    else:
        f = lambda v: math.exp((1.0 - p) * (v - lnS) - q * math.log(v))
        val, _ = sp_integrate.quad(f, lnS, math.inf, limit=200)
        if val <= 0.0:
            return 0.0
        log_int = (1.0 - p) * lnS + math.log(val)
    return 2.0 * math.exp(log_amp + log_int)


def far_field_integral(
    mix: MixtureDensity,
    gamma: float,
    S: float,
    ratio: float = 1.25,
    per_panel: int = 256,
    s_max: float = 1e18,
    rtol: float = 1e-15,
) -> float:
    """Integral of |f(s)|^gamma over |s| > S by log-spaced panel averages.

    Far out the integrand oscillates much faster than it decays, so each
    panel is integrated as (mean of equispaced samples) x (width).  Stops
    once three consecutive panels contribute below ``rtol`` of the total.
    """
    total = 0.0
    quiet = 0
    a = S
    while a < s_max and quiet < 3:
        b = a * ratio
        mid = a + (b - a) * (np.arange(per_panel) + 0.5) / per_panel
        panel = float(np.mean(np.abs(cf(mix, mid)) ** gamma)) * (b - a)
        total += panel
        quiet = quiet + 1 if panel <= rtol * max(total, 1e-300) else 0
        a = b
    return 2.0 * total


def cf_gamma_integral(
    mix_tilted: MixtureDensity,
    gamma: float,
    S: float,
    n_quad: int,
    poly_alpha: float = 0.0,
    fit_margin: float = FIT_MARGIN,
    far_field: bool = False,
) -> CfIntegrabilityReport:
    """Integral of |f(s)|^gamma on [-S, S] plus a tail-exponent verdict.

    The tail exponent comes from a log-log fit on [S/10, S]; with
    ``poly_alpha`` > 0 the fit and the extrapolation include the
    (log s)^(-2 alpha) factor produced by polynomial lattice weights.
    """
    if not gamma > 0:
        raise ValueError("gamma must be positive")
    if not S > 10 * math.e:
        raise ValueError("S must exceed 10e so the fit window [S/10, S] is usable")
    if n_quad < 2**12:
        raise ValueError("n_quad must be at least 2**12")
    s = np.linspace(0.0, S, n_quad)
    vals = np.abs(cf(mix_tilted, s)) ** gamma
    partial = 2.0 * float(np.trapezoid(vals, s))

    fit = fit_cf_tail(mix_tilted, S / 10.0, S, poly_alpha)
    left = fit_cf_tail(mix_tilted, S / 10.0, S / 3.0, poly_alpha).exponent
    right = fit_cf_tail(mix_tilted, S / 3.0, S, poly_alpha).exponent
    if math.isinf(left) or math.isinf(right):
        reliable = True
    else:
        reliable = abs(left - right) <= TAIL_FIT_RTOL * max(abs(left), abs(right))
    converges = gamma * (-fit.exponent) > 1.0 + fit_margin

    tail = None
    if converges:
        log_amp = _log_tail_amplitude(mix_tilted, S, gamma, fit, poly_alpha)
        tail = _model_tail(S, gamma, fit, poly_alpha, log_amp)
    far = far_field_integral(mix_tilted, gamma, S) if far_field else None
    return CfIntegrabilityReport(
        gamma=float(gamma),
        partial_integral=partial,
        S=float(S),
        tail_exponent=fit.exponent,
        converges=bool(converges),
        extrapolated_tail=tail,
        fit_margin=float(fit_margin),
        poly_alpha=float(poly_alpha),
        tail_fit_reliable=bool(reliable),
        half_window_exponents=(left, right),
        far_tail=far,
    )


class PlancherelResult(NamedTuple):
    lhs: float
    rhs: float
    rel_err: float
    tail_reliable: bool
    lhs_extrapolated: Optional[float]


def plancherel_check(
    mix: MixtureDensity, S: float, n_quad: int, poly_alpha: float = 0.0
) -> PlancherelResult:
    """integral |f|^2 ds against 2 pi integral p^2 dx (closed form).

    The CF side is near-field trapezoid plus the far-field panel integral;
    the power-law extrapolated variant is reported alongside when defined.
    """
    rep = cf_gamma_integral(mix, 2.0, S, n_quad, poly_alpha, far_field=True)
    lhs = rep.partial_integral + rep.far_tail
    rhs = 2.0 * math.pi * l2_inner(mix, mix)
    lhs_x = None if rep.extrapolated_tail is None else rep.partial_integral + rep.extrapolated_tail
    return PlancherelResult(lhs, rhs, abs(lhs - rhs) / rhs, rep.tail_fit_reliable, lhs_x)


def fourier_inversion(mix: MixtureDensity, x, S: float, n_quad: int = 2**14) -> np.ndarray:
    """(1/pi) integral_0^S Re(f(s) e^{-isx}) ds by the trapezoid rule."""
    s = np.linspace(0.0, S, n_quad)
    f = cf(mix, s)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.array([np.trapezoid((f * np.exp(-1j * s * xi)).real, s) for xi in xs]) / math.pi
    return out if np.ndim(x) else float(out[0])

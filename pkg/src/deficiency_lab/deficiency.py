"""Estimating and verifying exponential deficiencies of exact densities.

The estimators work on a log-density callable, so they apply equally to
built extremal mixtures and to their exact convolutions.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

import numpy as np

LogDensity = Callable[[np.ndarray], np.ndarray]

DIVERGENCE_THRESHOLD = 0.01
FIT_RESIDUAL_LIMIT = 1.0


def predicted_deficiency(eps_list: Sequence[float]) -> float:
    """1 / sum(1/eps_i): the deficiency of the convolution p_1 * ... * p_n."""
    eps = [float(e) for e in eps_list]
    if not eps:
        raise ValueError("need at least one deficiency")
    if any(not e > 0 for e in eps):
        raise ValueError("deficiencies must be positive")
    return 1.0 / math.fsum(1.0 / e for e in eps)


@dataclass(frozen=True)
class DecayReport:
    lam: float
    fitted_slope: float
    eps_hat: float
    intercept: float
    max_residual: float
    j_range: tuple[int, int]
    poly_correction: float

    @property
    def fit_ok(self) -> bool:
        """False when peaks do not follow an exponential law (model mismatch)."""
        return self.max_residual <= FIT_RESIDUAL_LIMIT

    def to_dict(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        d["j_range"] = list(self.j_range)
        return d


def _lstsq_line(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    A = np.column_stack([x, np.ones_like(x)])
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    return float(slope), float(intercept)


def estimate_decay_slope(
    density_log_eval: LogDensity,
    lam: float,
    poly_alpha: float,
    j_lo: int = 10,
    j_hi: int = 40,
) -> DecayReport:
    """Fit log p(j) + poly_alpha*log(j^2+1) linearly in j over lattice points.

    The slope estimates -(lam - eps), so ``eps_hat = lam + slope``.
    """
    if j_hi - j_lo < 10:
        raise ValueError("need j_hi - j_lo >= 10")
    j = np.arange(j_lo, j_hi + 1, dtype=float)
    logp = np.asarray(density_log_eval(j), dtype=float)
    if not np.all(np.isfinite(logp)):
        raise ValueError("log density underflowed on the fit range")
    y = logp + poly_alpha * np.log(j * j + 1.0)
    slope, intercept = _lstsq_line(j, y)
    resid = float(np.max(np.abs(y - (slope * j + intercept))))
    return DecayReport(
        lam=float(lam),
        fitted_slope=slope,
        eps_hat=lam + slope,
        intercept=intercept,
        max_residual=resid,
        j_range=(int(j_lo), int(j_hi)),
        poly_correction=float(poly_alpha),
    )


@dataclass(frozen=True)
class EnvelopeCheck:
    mu: float
    sup_value: float
    arg_sup: float
    trend_slope: float
    diverges: bool
    threshold: float
    window: tuple[float, float]
    poly_alpha: float

    def to_dict(self) -> dict:
        d = asdict(self)
        d["window"] = list(self.window)
        return d


def _envelope_nodes(x_lo: float, x_hi: float, n_points: int):
    if n_points < 64:
        raise ValueError("n_points must be >= 64")
    if not x_hi > x_lo:
        raise ValueError("empty window")
    lattice = np.arange(math.ceil(x_lo), math.floor(x_hi) + 1, dtype=float)
    x = np.union1d(np.linspace(x_lo, x_hi, n_points), lattice)
    tail_start = x_hi - (x_hi - x_lo) / 3.0
    jt = lattice[lattice >= tail_start]
    if jt.size < 3:
        raise ValueError("window too short for a lattice trend")
    return x, jt


def _envelope_check(x, logp, jt, logp_jt, mu, threshold, poly_alpha, window):
    g = logp + mu * x
    k = int(np.argmax(g))
    yt = logp_jt + mu * jt + poly_alpha * np.log(jt * jt + 1.0)
    trend, _ = _lstsq_line(jt, yt)
    return EnvelopeCheck(
        mu=float(mu),
        sup_value=float(np.exp(g[k])),
        arg_sup=float(x[k]),
        trend_slope=trend,
        diverges=bool(trend > threshold),
        threshold=float(threshold),
        window=(float(window[0]), float(window[1])),
        poly_alpha=float(poly_alpha),
    )


def verify_envelope(
    density_log_eval: LogDensity,
    mu: float,
    x_lo: float,
    x_hi: float,
    n_points: int = 1024,
    threshold: float = DIVERGENCE_THRESHOLD,
    poly_alpha: float = 0.0,
) -> EnvelopeCheck:
    """sup of p(x) e^{mu x} on a grid, plus a lattice growth trend.

    The trend is the least-squares slope of log p(j) + mu*j over integers in
    the last third of the window; ``poly_alpha`` optionally adds back the
    polynomial weight drift.  ``diverges`` is ``trend > threshold``.
    """
    x, jt = _envelope_nodes(x_lo, x_hi, n_points)
    logp = np.asarray(density_log_eval(x), dtype=float)
    logp_jt = np.asarray(density_log_eval(jt), dtype=float)
    return _envelope_check(x, logp, jt, logp_jt, mu, threshold, poly_alpha, (x_lo, x_hi))


def critical_mu_search(
    density_log_eval: LogDensity,
    mu_lo: float,
    mu_hi: float,
    tol: float,
    window: tuple[float, float] = (0.0, 60.0),
    n_points: int = 256,
    threshold: float = DIVERGENCE_THRESHOLD,
    poly_alpha: float = 0.0,
) -> float:
    """Bisect for the largest mu whose envelope check does not diverge."""
    x, jt = _envelope_nodes(window[0], window[1], n_points)
    # mu enters only through the linear term, so evaluate the density once
    logp = np.asarray(density_log_eval(x), dtype=float)
    logp_jt = np.asarray(density_log_eval(jt), dtype=float)

    def diverges(mu):
        return _envelope_check(
            x, logp, jt, logp_jt, mu, threshold, poly_alpha, window
        ).diverges

    if diverges(mu_lo) or not diverges(mu_hi):
        raise ValueError(f"bracket [{mu_lo}, {mu_hi}] does not straddle divergence")
    lo, hi = float(mu_lo), float(mu_hi)
    while hi - lo >= tol:
        mid = 0.5 * (lo + hi)
        if diverges(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)

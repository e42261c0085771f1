"""The extremal lattice family p_{lam,eps,kappa,alpha} and its closed forms.

Component j (|j| <= J) has mean j, width kappa*exp(-eps|j|) and weight
exp(-lam|j|) / (j^2+1)^alpha.  Peaks at the lattice points decay like
exp(-(lam-eps) j), which is what makes the deficiency exactly eps.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np
from scipy.special import logsumexp

from .mixture import LOG_SQRT_2PI, MixtureDensity, convolve, evaluate_log

J_CAP = 200
TRUNC_RTOL = 1e-12


@dataclass(frozen=True)
class ExtremalParams:
    lam: float
    eps: float
    kappa: float
    alpha: float
    trunc_J: Optional[int] = None

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")
        if not 0 < self.eps <= self.lam:
            raise ValueError(f"eps must lie in (0, lambda], got {self.eps}")
        if not self.kappa > 0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")
        if not self.alpha > 0.5:
            raise ValueError(f"alpha must exceed 1/2, got {self.alpha}")
        if self.trunc_J is not None and int(self.trunc_J) < 1:
            raise ValueError(f"trunc_J must be >= 1, got {self.trunc_J}")

    @property
    def mu(self) -> float:
        return self.lam - self.eps

    @property
    def J(self) -> int:
        if self.trunc_J is not None:
            return int(self.trunc_J)
        return choose_trunc_J(self.lam, self.alpha)

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "eps": self.eps,
            "kappa": self.kappa,
            "alpha": self.alpha,
            "trunc_J": self.trunc_J,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExtremalParams":
        return cls(
            lam=float(d["lambda"]),
            eps=float(d["eps"]),
            kappa=float(d["kappa"]),
            alpha=float(d["alpha"]),
            trunc_J=d.get("trunc_J"),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "ExtremalParams":
        return cls.from_dict(json.loads(text))


FIG1 = ExtremalParams(lam=0.55, eps=0.50, kappa=0.9, alpha=0.6)


def _log_w(j: np.ndarray, lam: float, alpha: float) -> np.ndarray:
    return -lam * np.abs(j) - alpha * np.log(j * j + 1.0)


def truncation_tail_bound(lam: float, alpha: float, J: int) -> float:
    """Integral-comparison bound on sum_{|j|>J} w_j."""
    return 2.0 * math.exp(-lam * J) * J ** (1.0 - 2.0 * alpha) / (2.0 * alpha - 1.0)


def choose_trunc_J(lam: float, alpha: float, rtol: float = TRUNC_RTOL, cap: int = J_CAP) -> int:
    """Smallest J whose tail bound is below ``rtol`` times the partial sum.

    Raises when the target is out of reach within ``cap`` terms rather than
    returning a silently inaccurate truncation.
    """
    partial = 1.0
    for J in range(1, cap + 1):
        partial += 2.0 * math.exp(-lam * J) / (J * J + 1.0) ** alpha
        if truncation_tail_bound(lam, alpha, J) < rtol * partial:
            return J
    raise ValueError(
        f"truncation target {rtol:g} unreachable with J <= {cap} "
        f"(lambda={lam}, alpha={alpha}); pass trunc_J explicitly"
    )


def build_extremal(params: ExtremalParams) -> tuple[MixtureDensity, float]:
    """Normalised extremal mixture and the log of its (truncated) normaliser."""
    J = params.J
    j = np.arange(-J, J + 1, dtype=float)
    lw = _log_w(j, params.lam, params.alpha)
    log_c = float(logsumexp(lw))
    sd = params.kappa * np.exp(-params.eps * np.abs(j))
    return MixtureDensity(lw - log_c, j, sd), log_c


def log_peak_values(params: ExtremalParams, j) -> np.ndarray:
    """log W_j(j) of the unnormalised family."""
    j = np.asarray(j, dtype=float)
    return (
        -params.mu * np.abs(j)
        - params.alpha * np.log(j * j + 1.0)
        - math.log(params.kappa)
        - LOG_SQRT_2PI
    )


def envelope_constant(params: ExtremalParams) -> float:
    """C = sum_{|j|<=J} W_j(j), the peak-sum envelope constant."""
    j = np.arange(-params.J, params.J + 1, dtype=float)
    return float(np.exp(logsumexp(log_peak_values(params, j))))


def log_mgf_closed_form(params: ExtremalParams, u: float) -> float:
    """log E e^{uX} summed directly over the lattice components."""
    if abs(u) > params.lam:
        warnings.warn(
            f"|u|={abs(u)} exceeds lambda={params.lam}: the truncated sum is finite "
            "but the full series is not guaranteed to be",
            RuntimeWarning,
            stacklevel=2,
        )
    J = params.J
    j = np.arange(-J, J + 1, dtype=float)
    lw = _log_w(j, params.lam, params.alpha)
    log_c = logsumexp(lw)
    expo = lw + u * j + 0.5 * u * u * params.kappa**2 * np.exp(-2.0 * params.eps * np.abs(j))
    return float(logsumexp(expo) - log_c)


class SplitWitness(NamedTuple):
    m: int
    i_m: int
    j_m: int
    sigma_m: float
    zeta: float
    zeta_tilde: float
    eps_tilde: float


def split_indices(m: int, eps: float, delta: float) -> tuple[int, int]:
    """Split m = i + j with i near m*delta/(eps+delta); odd reflection for m < 0."""
    if eps <= 0 or delta <= 0:
        raise ValueError("eps and delta must be positive")
    m = int(m)
    if m < 0:
        i, j = split_indices(-m, eps, delta)
        return -i, -j
    i = math.floor(m * delta / (eps + delta))
    return i, m - i


def lower_bound_params(eps, delta, kappa, xi, alpha, beta):
    """(eps_tilde, zeta, zeta_tilde, alpha + beta) of the convolution lower bound."""
    for name, v in (("eps", eps), ("delta", delta), ("kappa", kappa), ("xi", xi)):
        if not v > 0:
            raise ValueError(f"{name} must be positive")
    if not (alpha > 0.5 and beta > 0.5):
        raise ValueError("alpha and beta must exceed 1/2")
    eps_tilde = 1.0 / (1.0 / eps + 1.0 / delta)
    zeta = math.sqrt(kappa**2 + xi**2 * math.exp(-2.0 * delta))
    zeta_tilde = math.sqrt(kappa**2 * math.exp(2.0 * eps) + xi**2)
    assert zeta_tilde / zeta <= math.exp(max(eps, delta)) * (1 + 1e-12)
    return eps_tilde, zeta, zeta_tilde, alpha + beta


def split_witness(m: int, eps: float, delta: float, kappa: float, xi: float) -> SplitWitness:
    i, j = split_indices(m, eps, delta)
    sigma = math.sqrt(
        kappa**2 * math.exp(-2.0 * eps * abs(i)) + xi**2 * math.exp(-2.0 * delta * abs(j))
    )
    eps_t, zeta, zeta_t, _ = lower_bound_params(eps, delta, kappa, xi, 1.0, 1.0)
    return SplitWitness(int(m), i, j, sigma, zeta, zeta_t, eps_t)


def lattice_grid(x_lo: float, x_hi: float, subdivisions: int = 8) -> np.ndarray:
    """Integers in [x_lo, x_hi] plus ``subdivisions`` equal steps between them."""
    lo = math.ceil(x_lo * subdivisions)
    hi = math.floor(x_hi * subdivisions)
    return np.arange(lo, hi + 1) / subdivisions


def witness_ratio(
    p: MixtureDensity, q: MixtureDensity, reference: MixtureDensity, x_grid
) -> tuple[float, float]:
    """Minimum over ``x_grid`` of log((p*q)(x) / reference(x)) and its location."""
    x = np.asarray(x_grid, dtype=float)
    pq = convolve(p, q)
    log_ratio = evaluate_log(pq, x) - evaluate_log(reference, x)
    k = int(np.argmin(log_ratio))
    return float(log_ratio[k]), float(x[k])


def theoretical_K2(lam, eps, delta, M, N, C, D) -> float:
    """K_2 = D M lam/delta + C N lam/eps for the two-fold envelope."""
    for name, v in (("lambda", lam), ("eps", eps), ("delta", delta), ("M", M), ("N", N), ("C", C), ("D", D)):
        if not v > 0:
            raise ValueError(f"{name} must be positive")
    if eps > lam or delta > lam:
        raise ValueError("eps and delta must not exceed lambda")
    return D * M * lam / delta + C * N * lam / eps


def product_density_eval(q_mix: MixtureDensity, x: float, y: Sequence[float] = ()) -> float:
    """q(x) * phi_{k-1}(y): the lift of a 1-D density along e = (1, 0, ..., 0)."""
    y = np.asarray(y, dtype=float).ravel()
    log_phi = -0.5 * y.size * math.log(2.0 * math.pi) - 0.5 * float(y @ y)
    return math.exp(evaluate_log(q_mix, x) + log_phi)

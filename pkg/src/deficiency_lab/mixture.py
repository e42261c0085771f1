"""Exact calculus on finite Gaussian mixtures.

Weights are stored as natural logs so that mixtures whose weights span
hundreds of orders of magnitude (the extremal lattice family) stay
representable.  Every operation here is closed form; the grid module is
the independent numerical check.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from scipy.special import erfc, erfcx, logsumexp

LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
DEFAULT_PRUNE_LOG_TOL = -300.0 * math.log(10.0)
DEDUP_RTOL = 1e-14

# rough cap on (components x points) per vectorised block
_BLOCK = 2_000_000


class GaussianComponent(NamedTuple):
    log_weight: float
    mean: float
    std: float


@dataclass(frozen=True, eq=False)
class MixtureDensity:
    """Finite Gaussian mixture ``sum_j exp(log_weight_j) * N(mean_j, std_j**2)``.

    Arrays are copied and made read-only on construction.  ``pruned_log_mass``
    is the log of the mass dropped by pruning in the operations that produced
    this mixture (``-inf`` when nothing was dropped).
    """

    log_weights: np.ndarray
    means: np.ndarray
    stds: np.ndarray
    pruned_log_mass: float = -math.inf
    log_total_mass: float = field(init=False)

    def __post_init__(self):
        lw = np.array(self.log_weights, dtype=float).ravel()
        mu = np.array(self.means, dtype=float).ravel()
        sd = np.array(self.stds, dtype=float).ravel()
        if lw.size == 0:
            raise ValueError("mixture needs at least one component")
        if not (lw.size == mu.size == sd.size):
            raise ValueError("log_weights, means and stds must have equal length")
        if not np.all(np.isfinite(lw)):
            raise ValueError("log weights must be finite")
        if not np.all(np.isfinite(mu)):
            raise ValueError("means must be finite")
        if not np.all((sd > 0) & np.isfinite(sd)):
            raise ValueError("stds must be positive and finite")
        for a in (lw, mu, sd):
            a.setflags(write=False)
        object.__setattr__(self, "log_weights", lw)
        object.__setattr__(self, "means", mu)
        object.__setattr__(self, "stds", sd)
        object.__setattr__(self, "log_total_mass", float(logsumexp(lw)))

    @classmethod
    def from_components(cls, components: Iterable[Sequence[float]]) -> "MixtureDensity":
        comps = [tuple(c) for c in components]
        if not comps:
            raise ValueError("mixture needs at least one component")
        lw, mu, sd = zip(*comps)
        return cls(np.array(lw), np.array(mu), np.array(sd))

    @classmethod
    def gaussian(cls, mean: float = 0.0, std: float = 1.0, log_weight: float = 0.0):
        return cls(np.array([log_weight]), np.array([mean]), np.array([std]))

    @property
    def components(self) -> list[GaussianComponent]:
        return [
            GaussianComponent(float(a), float(b), float(c))
            for a, b, c in zip(self.log_weights, self.means, self.stds)
        ]

    def __len__(self) -> int:
        return self.log_weights.size

    @property
    def total_mass(self) -> float:
        return math.exp(self.log_total_mass)

    @property
    def is_normalized(self) -> bool:
        return abs(self.log_total_mass) <= 1e-9

    def normalized(self) -> "MixtureDensity":
        return MixtureDensity(
            self.log_weights - self.log_total_mass,
            self.means,
            self.stds,
            self.pruned_log_mass - self.log_total_mass,
        )

    def __call__(self, x):
        return np.exp(evaluate_log(self, x))

    # -- serialisation -------------------------------------------------
    def to_json(self) -> str:
        rows = ",\n    ".join(
            f'{{"log_weight": {lw:.17g}, "mean": {m:.17g}, "std": {s:.17g}}}'
            for lw, m, s in zip(self.log_weights, self.means, self.stds)
        )
        return '{\n  "components": [\n    ' + rows + "\n  ]\n}\n"

    @classmethod
    def from_json(cls, text: str) -> "MixtureDensity":
        doc = json.loads(text)
        return cls.from_components(
            (c["log_weight"], c["mean"], c["std"]) for c in doc["components"]
        )


def _component_log_pdf(x: np.ndarray, lw, mu, sd) -> np.ndarray:
    # x: (k, 1); components broadcast along axis 1
    z = (x - mu) / sd
    return lw - np.log(sd) - LOG_SQRT_2PI - 0.5 * z * z


def evaluate_log(mix: MixtureDensity, x):
    """Log of the (unnormalised) mixture density at ``x``; scalar or array."""
    xs = np.asarray(x, dtype=float)
    flat = xs.ravel()
    out = np.empty(flat.size)
    step = max(1, _BLOCK // len(mix))
    lw, mu, sd = mix.log_weights, mix.means, mix.stds
    for i in range(0, flat.size, step):
        block = flat[i : i + step, None]
        out[i : i + step] = logsumexp(_component_log_pdf(block, lw, mu, sd), axis=1)
    if xs.ndim == 0:
        return float(out[0])
    return out.reshape(xs.shape)


def _dedup(lw: np.ndarray, mu: np.ndarray, sd: np.ndarray, rtol: float = DEDUP_RTOL):
    """Merge components with equal (mean, std) up to ``rtol``, log-adding weights."""
    if lw.size < 2:
        return lw, mu, sd
    order = np.lexsort((sd, mu))
    lw, mu, sd = lw[order], mu[order], sd[order]
    new_mean = np.abs(np.diff(mu)) > rtol * np.maximum(1.0, np.abs(mu[1:]))
    new_std = np.abs(np.diff(sd)) > rtol * sd[1:]
    starts = np.flatnonzero(np.concatenate(([True], new_mean | new_std)))
    if starts.size == lw.size:
        return lw, mu, sd
    peak = np.maximum.reduceat(lw, starts)
    reps = np.repeat(peak, np.diff(np.append(starts, lw.size)))
    merged = peak + np.log(np.add.reduceat(np.exp(lw - reps), starts))
    return merged, mu[starts], sd[starts]


def _prune(lw, mu, sd, prune_log_tol: float):
    cutoff = lw.max() + prune_log_tol
    keep = lw >= cutoff
    if keep.all():
        return lw, mu, sd, -math.inf
    dropped = float(logsumexp(lw[~keep]))
    return lw[keep], mu[keep], sd[keep], dropped


def convolve(
    a: MixtureDensity, b: MixtureDensity, prune_log_tol: float = DEFAULT_PRUNE_LOG_TOL
) -> MixtureDensity:
    """Exact convolution: one component per pair, then dedup and prune.

    Pruning drops components lighter than ``max log weight + prune_log_tol``;
    the dropped mass is accumulated in ``pruned_log_mass``.
    """
    if prune_log_tol > 0:
        raise ValueError("prune_log_tol must be <= 0")
    lw = (a.log_weights[:, None] + b.log_weights[None, :]).ravel()
    mu = (a.means[:, None] + b.means[None, :]).ravel()
    sd = np.sqrt(a.stds[:, None] ** 2 + b.stds[None, :] ** 2).ravel()
    lw, mu, sd = _dedup(lw, mu, sd)
    lw, mu, sd, dropped = _prune(lw, mu, sd, prune_log_tol)
    # mass carried forward from earlier pruning, scaled by the other factor
    carried = np.logaddexp(
        a.pruned_log_mass + b.log_total_mass, b.pruned_log_mass + a.log_total_mass
    )
    return MixtureDensity(lw, mu, sd, float(np.logaddexp(carried, dropped)))


def n_fold(
    mix: MixtureDensity, n: int, prune_log_tol: float = DEFAULT_PRUNE_LOG_TOL
) -> MixtureDensity:
    """``mix`` convolved with itself ``n`` times (left fold)."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    out = mix
    for _ in range(n - 1):
        out = convolve(out, mix, prune_log_tol)
    return out


def _tilted_log_weights(mix: MixtureDensity, t: float) -> np.ndarray:
    return mix.log_weights + t * mix.means + 0.5 * t * t * mix.stds**2


def log_mgf(mix: MixtureDensity, u: float) -> float:
    """``log E exp(uX)`` for X distributed as the normalised mixture."""
    return float(logsumexp(_tilted_log_weights(mix, u))) - mix.log_total_mass


def tilt(mix: MixtureDensity, t: float) -> tuple[MixtureDensity, float]:
    """Exponential tilt ``e^{tx} p(x) / E e^{tX}``.

    Uses ``e^{tx} f_{a,b}(x) = e^{ta + t^2 b^2/2} f_{a + t b^2, b}(x)``.
    Returns the normalised tilted mixture and ``log E e^{tX}``.
    """
    lw = _tilted_log_weights(mix, t)
    log_norm = float(logsumexp(lw))
    tilted = MixtureDensity(lw - log_norm, mix.means + t * mix.stds**2, mix.stds)
    return tilted, log_norm - mix.log_total_mass


def cf(mix: MixtureDensity, s):
    """Characteristic function ``sum_j w_j exp(i s m_j - s^2 sd_j^2 / 2)``."""
    ss = np.asarray(s, dtype=float)
    flat = ss.ravel()
    out = np.empty(flat.size, dtype=complex)
    step = max(1, _BLOCK // len(mix))
    lw, mu, sd = mix.log_weights, mix.means, mix.stds
    for i in range(0, flat.size, step):
        blk = flat[i : i + step, None]
        mag = np.exp(lw - 0.5 * (blk * sd) ** 2)
        phase = blk * mu
        out[i : i + step] = (mag * np.cos(phase)).sum(axis=1) + 1j * (
            mag * np.sin(phase)
        ).sum(axis=1)
    if ss.ndim == 0:
        return complex(out[0])
    return out.reshape(ss.shape)


def l2_inner(a: MixtureDensity, b: MixtureDensity) -> float:
    """Closed form of ``integral a(x) b(x) dx``."""
    parts = []
    step = max(1, _BLOCK // len(b))
    for i in range(0, len(a), step):
        sl = slice(i, i + step)
        var = a.stds[sl, None] ** 2 + b.stds[None, :] ** 2
        d = a.means[sl, None] - b.means[None, :]
        lt = (
            a.log_weights[sl, None]
            + b.log_weights[None, :]
            - 0.5 * np.log(var)
            - LOG_SQRT_2PI
            - 0.5 * d * d / var
        )
        parts.append(logsumexp(lt))
    return float(np.exp(logsumexp(parts)))


def _log_normal_sf(z: np.ndarray) -> np.ndarray:
    """log Q(z); erfcx for z > 8 keeps the far tail finite in log space."""
    z = np.asarray(z, dtype=float)
    out = np.empty_like(z)
    big = z > 8.0
    with np.errstate(divide="ignore"):
        out[~big] = np.log(0.5 * erfc(z[~big] / math.sqrt(2.0)))
    zb = z[big]
    out[big] = math.log(0.5) + np.log(erfcx(zb / math.sqrt(2.0))) - 0.5 * zb * zb
    return out


def log_tail_prob(mix: MixtureDensity, x) -> np.ndarray | float:
    xs = np.asarray(x, dtype=float)
    flat = xs.ravel()
    z = (flat[:, None] - mix.means) / mix.stds
    lt = logsumexp(mix.log_weights + _log_normal_sf(z), axis=1) - mix.log_total_mass
    if xs.ndim == 0:
        return float(lt[0])
    return lt.reshape(xs.shape)


def tail_prob(mix: MixtureDensity, x):
    """``P(X >= x)`` for the normalised mixture."""
    out = np.minimum(np.exp(log_tail_prob(mix, x)), 1.0)
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class TailBoundCheck:
    x_values: list[float]
    tail_probs: list[float]
    chebyshev_bounds: list[float]
    all_satisfied: bool


def chebyshev_check(mix: MixtureDensity, lam: float, x_values) -> TailBoundCheck:
    """Compare ``P(X >= x)`` with ``M e^{-lam x}``, ``M = E e^{lam X}``."""
    xs = np.asarray(x_values, dtype=float)
    log_m = log_mgf(mix, lam)
    tails = np.atleast_1d(tail_prob(mix, xs))
    bounds = np.exp(log_m - lam * xs)
    ok = bool(np.all(tails <= bounds * (1 + 1e-12)))
    return TailBoundCheck(xs.tolist(), tails.tolist(), bounds.tolist(), ok)

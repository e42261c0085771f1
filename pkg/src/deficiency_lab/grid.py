"""Uniform-grid densities: the brute-force oracle for the closed forms.

Nothing here knows about mixture structure beyond pointwise evaluation
(``rasterize``) and the characteristic function samples.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .mixture import MixtureDensity, cf, evaluate_log

MIN_SAMPLES = 16


@dataclass(frozen=True, eq=False)
class GridDensity:
    x0: float
    h: float
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float).ravel()
        if not self.h > 0:
            raise ValueError("grid step must be positive")
        if v.size < MIN_SAMPLES:
            raise ValueError(f"need at least {MIN_SAMPLES} samples, got {v.size}")
        if np.any(v < 0) or not np.all(np.isfinite(v)):
            raise ValueError("grid values must be finite and nonnegative")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.size

    @property
    def x(self) -> np.ndarray:
        return self.x0 + self.h * np.arange(self.values.size)

    @property
    def x1(self) -> float:
        return self.x0 + self.h * (self.values.size - 1)

    def mass(self) -> float:
        return trapezoid(self.values, self.h)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("x,value\n")
        for xi, vi in zip(self.x, self.values):
            buf.write(f"{xi:.17g},{vi:.17g}\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "GridDensity":
        rows = list(csv.DictReader(io.StringIO(text)))
        xs = np.array([float(r["x"]) for r in rows])
        vs = np.array([float(r["value"]) for r in rows])
        h = float(np.mean(np.diff(xs)))
        return cls(float(xs[0]), h, vs)


def trapezoid(values: np.ndarray, h: float) -> float:
    return float(np.trapezoid(values, dx=h))


def rasterize(mix: MixtureDensity, x0: float, x1: float, h: float) -> GridDensity:
    """Sample the mixture at ``x0 + i*h`` up to ``x1``; underflow stores 0."""
    if not x1 > x0:
        raise ValueError(f"degenerate range [{x0}, {x1}]")
    if not h > 0:
        raise ValueError("grid step must be positive")
    n = int(math.floor((x1 - x0) / h + 1e-9)) + 1
    x = x0 + h * np.arange(n)
    return GridDensity(x0, h, np.exp(evaluate_log(mix, x)))


def fft_convolve(a: GridDensity, b: GridDensity) -> GridDensity:
    """Linear convolution of two grids (zero padded, no wraparound), scaled by h."""
    if not math.isclose(a.h, b.h, rel_tol=1e-12, abs_tol=0.0):
        raise ValueError(f"grid steps differ: {a.h} vs {b.h}")
    n_out = len(a) + len(b) - 1
    n_fft = 1 << (n_out - 1).bit_length()
    fa = np.fft.rfft(a.values, n_fft)
    fb = np.fft.rfft(b.values, n_fft)
    out = np.fft.irfft(fa * fb, n_fft)[:n_out] * a.h
    # round-off can leave tiny negatives where the true value is ~0
    return GridDensity(a.x0 + b.x0, a.h, np.clip(out, 0.0, None))


def integrate(g: GridDensity, weight_exponent: float = 0.0) -> float:
    """Trapezoid value of the integral of exp(u x) g(x)."""
    return trapezoid(np.exp(weight_exponent * g.x) * g.values, g.h)


def cf_magnitude_grid(mix: MixtureDensity, s_values) -> np.ndarray:
    return np.abs(cf(mix, np.asarray(s_values, dtype=float)))


def resolvable_window(eps: float, kappa: float, h: float) -> float:
    """|x| below which every extremal component has std >= 2h."""
    return max(0.0, math.log(kappa / (2.0 * h)) / eps)


def sup_error_on(a: GridDensity, b: GridDensity, x_lo: float, x_hi: float) -> float:
    """Sup |a - b| over common nodes inside [x_lo, x_hi]."""
    if not math.isclose(a.h, b.h, rel_tol=1e-12):
        raise ValueError("grid steps differ")
    shift = (b.x0 - a.x0) / a.h
    k = int(round(shift))
    if abs(shift - k) > 1e-6:
        raise ValueError("grids are not aligned")
    xa = a.x
    lo_i = max(0, k)
    hi_i = min(len(a), len(b) + k)
    va = a.values[lo_i:hi_i]
    vb = b.values[lo_i - k : hi_i - k]
    x = xa[lo_i:hi_i]
    sel = (x >= x_lo) & (x <= x_hi)
    return float(np.max(np.abs(va[sel] - vb[sel])))

"""How the regression window changes the fitted deficiency of convolutions.

Fits eps_hat on sliding lattice windows for p*q (eps 0.5 and 0.3) and for
the 2- and 3-fold self-convolutions of the eps=0.5 extremal, printing the
relative error against the harmonic prediction.  Early windows are biased
low because lopsided index splits still contribute at moderate j; windows
that reach the truncation order J feel the cut instead.
"""

from deficiency_lab.deficiency import estimate_decay_slope, predicted_deficiency
from deficiency_lab.extremal import ExtremalParams, build_extremal
from deficiency_lab.mixture import convolve, evaluate_log, n_fold

LAM = 0.55


def ext(eps, J):
    return build_extremal(ExtremalParams(LAM, eps, 0.9, 0.6, J))[0]


CASES = {
    "p*q": (lambda: convolve(ext(0.5, 70), ext(0.3, 70)), 1.2, [0.5, 0.3]),
    "2-fold": (lambda: n_fold(ext(0.5, 70), 2), 1.2, [0.5, 0.5]),
    "3-fold": (lambda: n_fold(ext(0.5, 60), 3), 1.8, [0.5, 0.5, 0.5]),
}
WINDOWS = [(10, 40), (20, 60), (40, 80), (60, 120)]

if __name__ == "__main__":
    print(f"{'case':<8}" + "".join(f"{str(w):>14}" for w in WINDOWS))
    for name, (make, a, eps) in CASES.items():
        mix = make()
        pred = predicted_deficiency(eps)
        row = []
        for lo, hi in WINDOWS:
            e = estimate_decay_slope(lambda x: evaluate_log(mix, x), LAM, a, lo, hi).eps_hat
            row.append(f"{100 * (e - pred) / pred:+13.1f}%")
        print(f"{name:<8}" + "".join(row))

import math

import numpy as np
import pytest
from hypothesis import strategies as st

from deficiency_lab.extremal import FIG1, ExtremalParams, build_extremal
from deficiency_lab.mixture import MixtureDensity


@pytest.fixture(scope="session")
def fig1_mix():
    return build_extremal(FIG1)[0]


@pytest.fixture(scope="session")
def eps03_mix():
    return build_extremal(ExtremalParams(0.55, 0.3, 0.9, 0.6))[0]


@st.composite
def mixtures(draw, max_components=4, normalized=False):
    k = draw(st.integers(1, max_components))
    finite = dict(allow_nan=False, allow_infinity=False)
    lw = draw(st.lists(st.floats(-3, 3, **finite), min_size=k, max_size=k))
    mu = draw(st.lists(st.floats(-5, 5, **finite), min_size=k, max_size=k))
    sd = draw(st.lists(st.floats(0.2, 3, **finite), min_size=k, max_size=k))
    mix = MixtureDensity(np.array(lw), np.array(mu), np.array(sd))
    return mix.normalized() if normalized else mix


def sorted_components(mix):
    # round means so float noise cannot swap near-equal components
    order = np.lexsort((np.round(mix.stds, 8), np.round(mix.means, 8)))
    return np.exp(mix.log_weights[order]), mix.means[order], mix.stds[order]


def log_gauss(x, m, s):
    return -0.5 * ((x - m) / s) ** 2 - math.log(s) - 0.5 * math.log(2 * math.pi)

"""Exact verification of exponential deficiencies under convolution."""

from .deficiency import (
    DecayReport,
    EnvelopeCheck,
    critical_mu_search,
    estimate_decay_slope,
    predicted_deficiency,
    verify_envelope,
)
from .extremal import (
    FIG1,
    ExtremalParams,
    SplitWitness,
    build_extremal,
    choose_trunc_J,
    envelope_constant,
    lattice_grid,
    log_mgf_closed_form,
    lower_bound_params,
    product_density_eval,
    split_indices,
    split_witness,
    theoretical_K2,
    witness_ratio,
)
from .grid import GridDensity, cf_magnitude_grid, fft_convolve, integrate, rasterize
from .mixture import (
    GaussianComponent,
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
from .scenarios import ScenarioConfig, ScenarioReport, fig1_export, run_all, run_scenario
from .tilting import (
    CfIntegrabilityReport,
    TiltReport,
    cf_gamma_integral,
    fit_cf_tail,
    min_n_for_bounded,
    plancherel_check,
    tilted_nfold_sup,
)

__version__ = "0.1.0"

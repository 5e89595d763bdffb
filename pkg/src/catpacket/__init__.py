"""Tunnelling of time-delayed wave-packet superpositions through 1-D barriers.

A single particle prepared as N copies of one momentum profile, released with
staggered delays, hits a barrier; the transmitted pulse train keeps
interfering long after the initial components have separated whenever the
barrier holds narrow quasi-bound levels.  This package computes the
transmission probability of such trains three ways and cross-checks them:

* brute-force momentum quadrature of the overlap matrices (`overlap`),
  behind any of the barrier filters in `barriers`;
* analytic closed forms valid for narrow resonances (`resonance`);
* spacing sweeps with feature extraction: oscillation frequency and decay,
  beat nodes, peak trains (`sweep`).

The `catpacket` command line drives the same machinery from JSON configs and
writes CSV/JSON artifacts; see `catpacket.cli`.
"""

from .barriers import (
    BarrierModel,
    BreitWignerModel,
    PiecewiseConstantPotential,
    RectangularBarrier,
    Resonance,
    bw_transmission_amp,
    bw_transmission_prob,
    exact_scattering,
    find_resonances,
    lorentzian_fit_quality,
    rect_transmission_prob,
    transmission_filter,
)
from .exceptions import (
    ApproximationWarning,
    CatpacketError,
    ConfigError,
    DegenerateNormalizationError,
    InsufficientDataError,
    QuadratureAccuracyError,
    UnsupportedModelError,
)
from .overlap import (
    MixedCatSpec,
    OverlapMatrix,
    QuadratureConfig,
    independent_probability,
    initial_overlap,
    interference_correction,
    mixed_pair_transmission,
    mixed_transmission,
    mixed_transmission_n,
    mode_weight,
    offdiag_overlap_mass,
    pair_overlap,
    transmission_probability,
    transmitted_overlap,
    transmitted_pair_overlap,
)
from .resonance import (
    ResonanceCoupling,
    bw_overlap_entry,
    closed_form_correction,
    large_n_correction,
    n_mode_probability,
    pair_sum_correction,
    transmitted_waveform,
    two_mode_single_res_correction,
    two_res_envelope_correction,
)
from .sweep import (
    BeatFit,
    OscillationFit,
    SweepResult,
    SweepSpec,
    extract_beat,
    extract_oscillation,
    locate_peaks,
    overlap_threshold,
    peaks_on_curve,
    run_sweep,
)
from .wavepacket import (
    CatStateSpec,
    DispersionRelation,
    GaussianProfile,
    Linear,
    Quadratic,
    amplitude,
    energy,
    group_velocity,
    momentum_at_energy,
)

__version__ = "0.1.0"

__all__ = [
    "ApproximationWarning",
    "BarrierModel",
    "BeatFit",
    "BreitWignerModel",
    "CatStateSpec",
    "CatpacketError",
    "ConfigError",
    "DegenerateNormalizationError",
    "DispersionRelation",
    "GaussianProfile",
    "InsufficientDataError",
    "Linear",
    "MixedCatSpec",
    "OscillationFit",
    "OverlapMatrix",
    "PiecewiseConstantPotential",
    "Quadratic",
    "QuadratureAccuracyError",
    "QuadratureConfig",
    "RectangularBarrier",
    "Resonance",
    "ResonanceCoupling",
    "SweepResult",
    "SweepSpec",
    "UnsupportedModelError",
    "amplitude",
    "bw_overlap_entry",
    "bw_transmission_amp",
    "bw_transmission_prob",
    "closed_form_correction",
    "energy",
    "exact_scattering",
    "extract_beat",
    "extract_oscillation",
    "find_resonances",
    "group_velocity",
    "independent_probability",
    "initial_overlap",
    "interference_correction",
    "large_n_correction",
    "locate_peaks",
    "lorentzian_fit_quality",
    "mixed_pair_transmission",
    "mixed_transmission",
    "mixed_transmission_n",
    "mode_weight",
    "momentum_at_energy",
    "n_mode_probability",
    "offdiag_overlap_mass",
    "overlap_threshold",
    "pair_overlap",
    "pair_sum_correction",
    "peaks_on_curve",
    "rect_transmission_prob",
    "run_sweep",
    "transmission_filter",
    "transmission_probability",
    "transmitted_overlap",
    "transmitted_pair_overlap",
    "transmitted_waveform",
    "two_mode_single_res_correction",
    "two_res_envelope_correction",
]

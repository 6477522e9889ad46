"""Numerical machinery for deriving oscillator energy quantization from
classical admissibility constraints: grids and quadrature, a normalized
Hermite-function basis with its frequency-scaled Fourier partner, the
constrained quadratic functional and stationarity probes, independent
finite-difference eigensolvers, a Monte Carlo normalization-drift
experiment, classical action-angle ensemble identities, and slope fits
recovering the energy quantum per unit angular frequency.
"""

from .basis import OscillatorParams, hermite_mode, mode_pair, superposition_pair
from .eigensolver import EigenPair, coordinate_residual, solve_conjugate, solve_coordinate
from .ensemble import (
    DiscreteMixture,
    EnsembleSamples,
    PointMass,
    SpectrumLine,
    Uniform,
    consistency_filter,
    energy_ladder,
    estimate_vte,
    sample_ensemble,
)
from .numerics import Grid, GridFunction, differentiate, integrate, make_grid
from .spectrum_fit import FitResult, FrequencyEnergyData, fit_beta, fit_photoelectric, synth_data
from .stability import (
    StabilityConfig,
    StabilityResult,
    base_state,
    perturbation,
    run_experiment,
    summarize,
)
from .transform import ConjugatePair, default_conjugate_grid, forward, inverse, parseval_residuals
from .variational import (
    EecReport,
    MultiplierEstimate,
    constraint_residuals,
    eec_report,
    estimate_multipliers,
    first_variation,
    functional_value,
    second_variation,
    stationarity_probe,
)

__version__ = "0.1.0"

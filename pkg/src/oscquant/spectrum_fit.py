"""Least-squares recovery of the energy-per-frequency slope from data.

Two models over rows of (angular frequency, energy):

    through-origin:   energy = beta * omega
    photoelectric:    energy = beta * omega - W   (W the work function)

Frequencies are angular throughout (rad/s); mixing in ordinary
frequencies silently rescales beta by 2 pi, so CSV data must use omega.
The line fit uses centered covariance formulas, which stay accurate at
physical scales (omega ~ 1e15, energy ~ 1e-19) where normal equations
would lose most of the mantissa.
"""

from dataclasses import dataclass, field

import numpy as np

__all__ = ["FrequencyEnergyData", "FitResult", "fit_beta", "fit_photoelectric",
           "synth_data"]


@dataclass
class FrequencyEnergyData:
    """Rows of (omega, energy) with optional generation metadata."""

    omega: np.ndarray = field(repr=False)
    energy: np.ndarray = field(repr=False)
    noise_level: float = 0.0
    seed: int | None = None

    def __post_init__(self):
        self.omega = np.asarray(self.omega, dtype=float)
        self.energy = np.asarray(self.energy, dtype=float)
        if self.omega.shape != self.energy.shape or self.omega.ndim != 1:
            raise ValueError("omega and energy must be 1-D arrays of equal length")
        if np.any(self.omega <= 0):
            raise ValueError("all frequencies must be positive")

    @property
    def n_rows(self) -> int:
        return self.omega.size


@dataclass(frozen=True)
class FitResult:
    beta_hat: float
    intercept: float      # fitted work function W; 0 for through-origin fits
    rms_residual: float

    def __post_init__(self):
        if self.rms_residual < 0:
            raise ValueError("rms_residual must be nonnegative")


def _rms(residuals: np.ndarray) -> float:
    return float(np.sqrt(np.mean(residuals ** 2)))


def fit_beta(data: FrequencyEnergyData) -> FitResult:
    """Through-origin least squares: beta = sum(w*y) / sum(w^2)."""
    if data.n_rows < 1:
        raise ValueError("need at least one row")
    denom = float(np.sum(data.omega ** 2))
    if denom == 0.0:
        raise ValueError("degenerate design: all frequencies zero")
    beta = float(np.sum(data.omega * data.energy)) / denom
    return FitResult(beta_hat=beta, intercept=0.0,
                     rms_residual=_rms(data.energy - beta * data.omega))


def fit_photoelectric(data: FrequencyEnergyData) -> FitResult:
    """Ordinary least squares for energy = beta*omega - W."""
    if data.n_rows < 2:
        raise ValueError("need at least two rows for a line fit")
    omega_bar = float(data.omega.mean())
    energy_bar = float(data.energy.mean())
    d_omega = data.omega - omega_bar
    var = float(np.sum(d_omega ** 2))
    if var == 0.0:
        raise ValueError("rank-deficient design: all frequencies equal")
    beta = float(np.sum(d_omega * (data.energy - energy_bar))) / var
    work = beta * omega_bar - energy_bar
    return FitResult(beta_hat=beta, intercept=work,
                     rms_residual=_rms(data.energy - (beta * data.omega - work)))


def synth_data(beta_true: float, work_function: float, omega_range: tuple,
               n_rows: int, noise_level: float = 0.0,
               seed: int = 0) -> FrequencyEnergyData:
    """Deterministic synthetic dataset on the photoelectric line.

    Frequencies are evenly spaced across omega_range.  Rows whose
    noiseless line value is nonpositive are dropped (no emission below
    threshold); Gaussian noise of the given relative level is then
    applied to the remaining rows from a Philox stream keyed on the
    seed, so a fixed seed reproduces the rows bitwise.
    """
    lo, hi = omega_range
    if lo <= 0 or hi <= 0 or hi < lo:
        raise ValueError(f"omega_range must be positive with lo <= hi, got {omega_range}")
    if n_rows < 1:
        raise ValueError("need at least one row")
    if n_rows == 1:
        omega = np.array([0.5 * (lo + hi)])
    else:
        omega = lo + (hi - lo) * np.arange(n_rows) / (n_rows - 1)
    line = beta_true * omega - work_function
    above = line > 0.0
    omega, line = omega[above], line[above]
    if noise_level > 0.0 and omega.size > 0:
        rng = np.random.Generator(np.random.Philox(key=[seed, 0]))
        line = line * (1.0 + noise_level * rng.standard_normal(omega.size))
    return FrequencyEnergyData(omega=omega, energy=line,
                               noise_level=noise_level, seed=seed)

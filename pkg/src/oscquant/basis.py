"""Normalized Hermite-function basis and transform-consistent pairs.

The n-th basis function at scale alpha is

    psi_n(q) = sqrt(alpha) * h_n(alpha q)

where h_n is the unit-norm Hermite function.  h_n is generated by the
stable three-term recurrence on already-normalized functions,

    h_0(x) = pi^(-1/4) exp(-x^2/2)
    h_1(x) = sqrt(2) x h_0(x)
    h_k(x) = sqrt(2/k) x h_{k-1}(x) - sqrt((k-1)/k) h_{k-2}(x),

never via raw Hermite polynomials times a separate normalization, which
overflows beyond n ~ 20.
"""

from dataclasses import dataclass
import math

import numpy as np

from .numerics import Grid, GridFunction
from .transform import ConjugatePair, forward

__all__ = ["OscillatorParams", "hermite_mode", "mode_pair", "superposition_pair"]

# recurrence is comfortably stable well past this, but grids sized for the
# package defaults stop resolving the oscillations around here
MAX_MODE = 60


@dataclass(frozen=True)
class OscillatorParams:
    """Oscillator frequency, the two ladder parameters, and the basis scale.

    alpha defaults to sqrt(omega/beta1), the unique scale at which the
    basis functions solve the coordinate-space stationarity equation.
    """

    omega: float
    beta1: float = 1.0
    beta2: float = 1.0
    alpha: float = None  # type: ignore[assignment]

    def __post_init__(self):
        for name in ("omega", "beta1", "beta2"):
            val = getattr(self, name)
            if not (np.isfinite(val) and val > 0):
                raise ValueError(f"{name} must be positive, got {val}")
        if self.alpha is None:
            object.__setattr__(self, "alpha", math.sqrt(self.omega / self.beta1))
        elif not (np.isfinite(self.alpha) and self.alpha > 0):
            raise ValueError(f"alpha must be positive, got {self.alpha}")

    @property
    def beta(self) -> float:
        return 0.5 * (self.beta1 + self.beta2)

    @property
    def chi1(self) -> float:
        return self.beta1 / (self.beta1 + self.beta2)

    @property
    def chi2(self) -> float:
        # computed as the exact complement so chi1 + chi2 == 1 identically
        return 1.0 - self.chi1


def _check_mode_window(n: int, alpha: float, grid: Grid, label: str) -> None:
    # classical turning point of mode n is at |x| = sqrt(2n+1) in scaled
    # units; require a few extra widths of Gaussian tail inside the window
    need = math.sqrt(2 * n + 1) + 4.0
    if grid.half_width * alpha < need:
        raise ValueError(
            f"{label} too small for mode {n}: half_width*alpha = "
            f"{grid.half_width * alpha:.3g} < {need:.3g}"
        )


def hermite_mode(n: int, alpha: float, grid: Grid) -> GridFunction:
    """Samples of the n-th normalized Hermite function at scale alpha."""
    if n < 0 or n != int(n):
        raise ValueError(f"mode index must be a nonnegative integer, got {n}")
    if n > MAX_MODE:
        raise ValueError(f"mode index {n} exceeds the supported maximum {MAX_MODE}")
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    _check_mode_window(n, alpha, grid, "grid")

    x = alpha * grid.points
    prev = np.pi ** -0.25 * np.exp(-0.5 * x * x)
    if n == 0:
        return GridFunction(grid, math.sqrt(alpha) * prev)
    cur = math.sqrt(2.0) * x * prev
    for k in range(2, n + 1):
        prev, cur = cur, math.sqrt(2.0 / k) * x * cur - math.sqrt((k - 1) / k) * prev
    return GridFunction(grid, math.sqrt(alpha) * cur)


def mode_pair(n: int, params: OscillatorParams, qgrid: Grid, lgrid: Grid) -> ConjugatePair:
    """Basis function n together with its conjugate partner.

    The partner lives at scale omega/alpha in L, so the L window must
    contain its turning points too.
    """
    _check_mode_window(n, params.omega / params.alpha, lgrid, "lgrid")
    psi = hermite_mode(n, params.alpha, qgrid)
    f = forward(psi, params.omega, lgrid)
    return ConjugatePair(psi=psi, f=f, omega=params.omega, consistency_checked=True)


def superposition_pair(c: float, params: OscillatorParams, qgrid: Grid,
                       lgrid: Grid) -> ConjugatePair:
    """Two-mode mixture sqrt(c)*mode0 + sqrt(1-c)*mode1 as a consistent pair.

    The conjugate side is combined with the same coefficients, which is
    exact because the kernel is linear.
    """
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"mixture weight must lie in [0, 1], got {c}")
    p0 = mode_pair(0, params, qgrid, lgrid)
    p1 = mode_pair(1, params, qgrid, lgrid)
    a, b = math.sqrt(c), math.sqrt(1.0 - c)
    psi = GridFunction(qgrid, a * p0.psi.samples + b * p1.psi.samples)
    f = GridFunction(lgrid, a * p0.f.samples + b * p1.f.samples)
    return ConjugatePair(psi=psi, f=f, omega=params.omega, consistency_checked=True)

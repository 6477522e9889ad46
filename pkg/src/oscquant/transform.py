"""Frequency-scaled Fourier kernel linking a coordinate-space function to
its conjugate partner, plus Parseval identity diagnostics.

The kernel pair is

    f(L)   = sqrt(omega/2pi) * integral psi(q) exp(+i omega q L) dq
    psi(q) = sqrt(omega/2pi) * integral f(L)  exp(-i omega q L) dL

evaluated by direct Simpson quadrature at every target point.  A dense
O(Nq * NL) summation is deliberate: the grids hold a few thousand points,
the omega-scaled kernel does not align with power-of-two FFT conventions,
and exactness of the stated kernel matters more than speed here.  The
inner reductions are fixed-order pairwise sums, so results are bitwise
reproducible regardless of thread count.
"""

from dataclasses import dataclass, field

import numpy as np

from .numerics import Grid, GridFunction, integrate, differentiate, make_grid

__all__ = [
    "ConjugatePair",
    "forward",
    "inverse",
    "parseval_residuals",
    "default_conjugate_grid",
]

# rows of the kernel matrix evaluated per block to bound memory
_CHUNK = 512

# a function is considered decaying when its boundary samples are below
# this fraction of its peak; the oscillatory quadrature is untrustworthy
# for slowly decaying inputs
_DECAY_FRACTION = 1e-6


@dataclass
class ConjugatePair:
    """A coordinate-space function and its conjugate-space partner.

    ``consistency_checked`` marks pairs whose ``f`` was derived from
    ``psi`` via :func:`forward` (or built by a transform-linear
    combination of such pairs).
    """

    psi: GridFunction
    f: GridFunction
    omega: float
    consistency_checked: bool = False

    def __post_init__(self):
        if self.omega <= 0:
            raise ValueError(f"omega must be positive, got {self.omega}")


def default_conjugate_grid(qgrid: Grid, omega: float) -> Grid:
    """Conjugate-space grid with the q-window scaled by 1/omega.

    With this choice the kernel phase omega*q*L spans the same symmetric
    range on both axes.
    """
    return make_grid(qgrid.half_width / omega, qgrid.n_points)


def _check_decay(g: GridFunction, name: str) -> None:
    s = np.abs(g.samples)
    peak = s.max()
    if peak == 0.0:
        return
    edge = max(s[0], s[-1])
    if edge > _DECAY_FRACTION * peak:
        raise ValueError(
            f"{name} does not decay at its grid ends "
            f"(boundary/peak = {edge / peak:.2e}); enlarge the window"
        )


def _kernel_quadrature(src: GridFunction, targets: np.ndarray, phase_sign: float,
                       omega: float) -> np.ndarray:
    weighted = src.grid.simpson_weights * src.samples
    pts = src.grid.points
    out = np.empty(targets.size, dtype=np.complex128)
    for i0 in range(0, targets.size, _CHUNK):
        block = targets[i0:i0 + _CHUNK, None]
        phase = (phase_sign * omega) * pts[None, :] * block
        out[i0:i0 + _CHUNK] = (np.exp(1j * phase) * weighted[None, :]).sum(axis=1)
    return np.sqrt(omega / (2.0 * np.pi)) * out


def forward(psi: GridFunction, omega: float, lgrid: Grid) -> GridFunction:
    """Map psi(q) to its conjugate f(L) with the exp(+i omega q L) kernel."""
    if omega <= 0:
        raise ValueError(f"omega must be positive, got {omega}")
    _check_decay(psi, "psi")
    return GridFunction(lgrid, _kernel_quadrature(psi, lgrid.points, +1.0, omega))


def inverse(f: GridFunction, omega: float, qgrid: Grid) -> GridFunction:
    """Map f(L) back to psi(q) with the conjugate exp(-i omega q L) kernel."""
    if omega <= 0:
        raise ValueError(f"omega must be positive, got {omega}")
    _check_decay(f, "f")
    return GridFunction(qgrid, _kernel_quadrature(f, qgrid.points, -1.0, omega))


def consistency_error(pair: ConjugatePair) -> float:
    """Relative L2 mismatch between pair.f and forward(pair.psi)."""
    recomputed = forward(pair.psi, pair.omega, pair.f.grid)
    w = pair.f.grid.simpson_weights
    num = np.sqrt(np.sum(w * np.abs(pair.f.samples - recomputed.samples) ** 2))
    den = np.sqrt(np.sum(w * np.abs(pair.f.samples) ** 2))
    return float(num / den) if den > 0 else float(num)


def parseval_residuals(pair: ConjugatePair) -> tuple[float, float]:
    """Residuals of the two derivative Parseval identities for the pair.

    Returns (r_f, r_psi) where

        r_f   = | int |df/dL|^2 dL  -  int omega^2 q^2 |psi|^2 dq |
        r_psi = | int |dpsi/dq|^2 dq - int omega^2 L^2 |f|^2 dL   |

    Both vanish (up to quadrature error) for transform-consistent pairs.
    """
    omega2 = pair.omega ** 2
    q = pair.psi.grid.points
    L = pair.f.grid.points

    df = differentiate(pair.f)
    dpsi = differentiate(pair.psi)

    lhs_f = integrate(GridFunction(pair.f.grid, np.abs(df.samples) ** 2))
    rhs_f = integrate(GridFunction(pair.psi.grid, omega2 * q ** 2 * np.abs(pair.psi.samples) ** 2))
    lhs_psi = integrate(GridFunction(pair.psi.grid, np.abs(dpsi.samples) ** 2))
    rhs_psi = integrate(GridFunction(pair.f.grid, omega2 * L ** 2 * np.abs(pair.f.samples) ** 2))

    return abs(lhs_f - rhs_f), abs(lhs_psi - rhs_psi)

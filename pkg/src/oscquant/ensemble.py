"""Classical action-angle ensembles and the discrete energy ladder.

An oscillator state is parameterized by an angle Q and a nonnegative
action a via

    q = sqrt(2a/omega) sin(Q),    p = sqrt(2a omega) cos(Q),

which makes p^2/2 + omega^2 q^2 / 2 = a*omega an exact samplewise
identity.  Sampling Q and a independently and averaging gives the
potential/kinetic split V = <a> omega <sin^2 Q>, T = <a> omega <cos^2 Q>
and E = <a> omega regardless of the two laws.

The ladder side enumerates candidate (n, m) potential/kinetic levels and
keeps only those consistent with a shared angle distribution, which
forces m = n and the evenly spaced total energies (2n+1)*beta*omega/2.
"""

from dataclasses import dataclass, field

import numpy as np

from .basis import OscillatorParams

__all__ = [
    "Uniform",
    "PointMass",
    "DiscreteMixture",
    "EnsembleSamples",
    "SpectrumLine",
    "VTEEstimate",
    "sample_ensemble",
    "estimate_vte",
    "energy_ladder",
    "consistency_filter",
]


@dataclass(frozen=True)
class Uniform:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got [{self.lo}, {self.hi}]")

    def draw(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return rng.uniform(self.lo, self.hi, size=n)


@dataclass(frozen=True)
class PointMass:
    value: float

    def draw(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return np.full(n, self.value)


@dataclass(frozen=True)
class DiscreteMixture:
    values: tuple
    weights: tuple

    def __post_init__(self):
        if len(self.values) != len(self.weights) or not self.values:
            raise ValueError("values and weights must be equal-length and nonempty")
        w = np.asarray(self.weights, dtype=float)
        if np.any(w < 0) or w.sum() <= 0:
            raise ValueError("weights must be nonnegative and not all zero")

    def draw(self, rng: np.random.Generator, n: int) -> np.ndarray:
        w = np.asarray(self.weights, dtype=float)
        idx = rng.choice(len(self.values), size=n, p=w / w.sum())
        return np.asarray(self.values, dtype=float)[idx]


@dataclass
class EnsembleSamples:
    """Struct-of-arrays container for N independent oscillator samples."""

    omega: float
    angle: np.ndarray = field(repr=False)
    action: np.ndarray = field(repr=False)

    def __post_init__(self):
        if np.any(self.action < 0):
            raise ValueError("actions must be nonnegative")

    @property
    def n(self) -> int:
        return self.angle.size

    @property
    def q(self) -> np.ndarray:
        return np.sqrt(2.0 * self.action / self.omega) * np.sin(self.angle)

    @property
    def p(self) -> np.ndarray:
        return np.sqrt(2.0 * self.action * self.omega) * np.cos(self.angle)


def sample_ensemble(angle_dist, action_dist, n: int, omega: float,
                    seed: int) -> EnsembleSamples:
    """Draw N samples with the angle and action laws independent.

    The two streams are Philox generators keyed on (seed, 0) and
    (seed, 1), so each block is a pure function of the seed and results
    do not depend on evaluation interleaving.
    """
    if n < 1:
        raise ValueError(f"need at least one sample, got {n}")
    if omega <= 0:
        raise ValueError(f"omega must be positive, got {omega}")
    rng_angle = np.random.Generator(np.random.Philox(key=[seed, 0]))
    rng_action = np.random.Generator(np.random.Philox(key=[seed, 1]))
    angle = angle_dist.draw(rng_angle, n)
    action = action_dist.draw(rng_action, n)
    return EnsembleSamples(omega=omega, angle=angle, action=action)


@dataclass(frozen=True)
class VTEEstimate:
    """Raw and factored energy estimators of one ensemble."""

    potential: float          # mean of omega^2 q^2 / 2
    kinetic: float            # mean of p^2 / 2
    total: float              # potential + kinetic
    mean_action_omega: float  # <a> omega
    factored_potential: float  # <a> omega <sin^2 Q>
    factored_kinetic: float    # <a> omega <cos^2 Q>
    se_potential: float
    se_kinetic: float


def estimate_vte(samples: EnsembleSamples) -> VTEEstimate:
    """Sample means of the potential, kinetic, and total energy.

    The raw estimators average omega^2 q^2/2 and p^2/2 directly; the
    factored ones use the product <a> omega <sin^2 Q> that independence
    justifies in expectation.  Standard errors of the raw estimators are
    included so callers can make 3-sigma comparisons.
    """
    if samples.n == 0:
        raise ValueError("empty ensemble")
    omega = samples.omega
    pot = 0.5 * omega ** 2 * samples.q ** 2
    kin = 0.5 * samples.p ** 2
    v = float(pot.mean())
    t = float(kin.mean())
    a_mean_omega = float(samples.action.mean()) * omega
    sin2 = float(np.mean(np.sin(samples.angle) ** 2))
    cos2 = float(np.mean(np.cos(samples.angle) ** 2))
    root_n = np.sqrt(samples.n)
    return VTEEstimate(
        potential=v,
        kinetic=t,
        total=v + t,
        mean_action_omega=a_mean_omega,
        factored_potential=a_mean_omega * sin2,
        factored_kinetic=a_mean_omega * cos2,
        se_potential=float(pot.std() / root_n),
        se_kinetic=float(kin.std() / root_n),
    )


@dataclass
class SpectrumLine:
    """One candidate (n, m) level of the potential/kinetic ladder."""

    n: int
    m: int
    potential: float
    kinetic: float
    total: float
    mean_action: float = None  # type: ignore[assignment]
    survives: bool = None      # type: ignore[assignment]


def energy_ladder(params: OscillatorParams, n_max: int, m_max: int) -> list[SpectrumLine]:
    """All candidate levels for 0 <= n <= n_max, 0 <= m <= m_max.

    V = (2n+1)(beta1+beta2) chi1 omega / 4 and
    T = (2m+1)(beta1+beta2) chi2 omega / 4; the total is their sum.
    """
    if n_max < 0 or m_max < 0:
        raise ValueError("n_max and m_max must be nonnegative")
    bsum = params.beta1 + params.beta2
    lines = []
    for n in range(n_max + 1):
        for m in range(m_max + 1):
            v = (2 * n + 1) * bsum * params.chi1 * params.omega / 4.0
            t = (2 * m + 1) * bsum * params.chi2 * params.omega / 4.0
            lines.append(SpectrumLine(n=n, m=m, potential=v, kinetic=t, total=v + t))
    return lines


def consistency_filter(lines, params: OscillatorParams,
                       rel_tol: float = 1e-9) -> list[SpectrumLine]:
    """Flag the levels consistent with a single shared angle distribution.

    The n = m = 0 level fixes the mean action to (beta1+beta2)/4, from
    which <sin^2 Q> = chi1 and <cos^2 Q> = chi2 follow by division.  A
    general level then needs V/T = chi1/chi2, which holds exactly when
    m = n.  Every line comes back with its mean action E/omega attached
    and ``survives`` set; the survivors carry total energy
    (2n+1)*beta*omega/2 with spacing beta*omega.
    """
    if params.chi2 == 0.0:
        raise ValueError("chi2 vanishes; the potential/kinetic ratio is undefined")
    bsum = params.beta1 + params.beta2
    # ground-level deduction rather than assumption: <a_0> from the
    # total of the (0, 0) line, then the angle moments by division
    ground_action = bsum / 4.0
    sin2 = (bsum * params.chi1 * params.omega / 4.0) / (ground_action * params.omega)
    cos2 = 1.0 - sin2

    out = []
    for line in lines:
        mean_action = line.total / params.omega
        want_ratio = sin2 / cos2
        have_ratio = line.potential / line.kinetic
        survives = abs(have_ratio - want_ratio) <= rel_tol * want_ratio
        out.append(SpectrumLine(n=line.n, m=line.m, potential=line.potential,
                                kinetic=line.kinetic, total=line.total,
                                mean_action=mean_action, survives=survives))
    return out

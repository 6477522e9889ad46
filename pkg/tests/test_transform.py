import numpy as np
import pytest

from oscquant.basis import hermite_mode
from oscquant.numerics import GridFunction, differentiate, integrate, make_grid
from oscquant.transform import (
    ConjugatePair,
    consistency_error,
    default_conjugate_grid,
    forward,
    inverse,
    parseval_residuals,
)


def test_value_at_zero_reduces_to_plain_integral(qgrid, lgrid):
    psi = hermite_mode(0, 1.0, qgrid)
    f = forward(psi, 1.0, lgrid)
    expected = integrate(psi) * np.sqrt(1.0 / (2 * np.pi))
    center = (lgrid.n_points - 1) // 2
    assert f.samples[center] == pytest.approx(expected, abs=1e-10)


def test_odd_input_vanishes_at_zero(qgrid, lgrid):
    psi = hermite_mode(1, 1.0, qgrid)
    f = forward(psi, 1.0, lgrid)
    center = (lgrid.n_points - 1) // 2
    assert abs(f.samples[center]) <= 1e-14


def test_roundtrip_recovers_mode_two(qgrid, lgrid):
    psi = hermite_mode(2, 1.0, qgrid)
    back = inverse(forward(psi, 1.0, lgrid), 1.0, qgrid)
    assert np.abs(back.samples - psi.samples).max() <= 1e-8


def test_inverse_of_zero_is_zero(qgrid, lgrid):
    zero = GridFunction(lgrid, np.zeros(lgrid.n_points))
    psi = inverse(zero, 1.0, qgrid)
    assert np.all(psi.samples == 0.0)


def test_real_even_input_gives_real_even_output(qgrid, lgrid):
    f = GridFunction(lgrid, np.exp(-lgrid.points ** 2))
    psi = inverse(f, 1.0, qgrid)
    assert np.abs(psi.samples.imag).max() <= 1e-10
    assert np.abs(psi.samples - psi.samples[::-1]).max() <= 1e-10


def test_rejects_non_decaying_input(qgrid, lgrid):
    with pytest.raises(ValueError):
        forward(GridFunction(qgrid, np.ones(qgrid.n_points)), 1.0, lgrid)


def test_rejects_nonpositive_omega(qgrid, lgrid):
    psi = hermite_mode(0, 1.0, qgrid)
    with pytest.raises(ValueError):
        forward(psi, -1.0, lgrid)


def test_linearity(qgrid, lgrid):
    psi0 = hermite_mode(0, 1.0, qgrid)
    psi2 = hermite_mode(2, 1.0, qgrid)
    a, b = 0.3, -1.7
    combo = GridFunction(qgrid, a * psi0.samples + b * psi2.samples)
    lhs = forward(combo, 1.0, lgrid).samples
    rhs = a * forward(psi0, 1.0, lgrid).samples + b * forward(psi2, 1.0, lgrid).samples
    assert np.abs(lhs - rhs).max() <= 1e-14


def test_plancherel_for_consistent_pairs(pairs):
    for n in range(4):
        pair = pairs(n)
        nq = integrate(GridFunction(pair.psi.grid, np.abs(pair.psi.samples) ** 2))
        nl = integrate(GridFunction(pair.f.grid, np.abs(pair.f.samples) ** 2))
        assert nq == pytest.approx(nl, abs=1e-9)


def test_parseval_residuals_small_for_modes(pairs):
    r_f, r_psi = parseval_residuals(pairs(0))
    assert r_f <= 1e-8 and r_psi <= 1e-8
    r_f, r_psi = parseval_residuals(pairs(3))
    assert r_f <= 1e-6 and r_psi <= 1e-6


def test_parseval_residual_with_zeroed_partner(pairs):
    pair = pairs(0)
    zeroed = ConjugatePair(psi=pair.psi,
                           f=GridFunction(pair.f.grid,
                                          np.zeros(pair.f.grid.n_points)),
                           omega=pair.omega)
    _, r_psi = parseval_residuals(zeroed)
    dpsi = differentiate(pair.psi)
    grad_energy = integrate(GridFunction(pair.psi.grid, np.abs(dpsi.samples) ** 2))
    assert r_psi == pytest.approx(grad_energy, rel=1e-12)
    assert r_psi > 0


def test_consistency_error_flags_corruption(pairs):
    pair = pairs(1)
    assert consistency_error(pair) <= 1e-10
    corrupted = ConjugatePair(psi=pair.psi,
                              f=GridFunction(pair.f.grid, 1.05 * pair.f.samples),
                              omega=pair.omega)
    assert consistency_error(corrupted) > 1e-2


def test_default_conjugate_grid_scales_window():
    g = make_grid(12.0, 1001)
    lg = default_conjugate_grid(g, 4.0)
    assert lg.half_width == 3.0
    assert lg.n_points == 1001

import pytest

from oscquant.basis import OscillatorParams, mode_pair, superposition_pair
from oscquant.numerics import make_grid
from oscquant.transform import default_conjugate_grid

DEFAULT_B = 10.0
DEFAULT_N = 4001


@pytest.fixture(scope="session")
def qgrid():
    return make_grid(DEFAULT_B, DEFAULT_N)


@pytest.fixture(scope="session")
def params():
    return OscillatorParams(omega=1.0, beta1=1.0, beta2=1.0)


@pytest.fixture(scope="session")
def lgrid(qgrid, params):
    return default_conjugate_grid(qgrid, params.omega)


@pytest.fixture(scope="session")
def pairs(qgrid, lgrid, params):
    """Cached transform-consistent pairs; transforms are the slow part."""
    cache = {}

    def get(key):
        if key not in cache:
            if isinstance(key, int):
                cache[key] = mode_pair(key, params, qgrid, lgrid)
            else:
                cache[key] = superposition_pair(key[1], params, qgrid, lgrid)
        return cache[key]

    return get

import numpy as np
import pytest

from dircap.circle_fn import FourierSeries


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_series(rng, N):
    c = rng.normal(size=2 * N + 1) + 1j * rng.normal(size=2 * N + 1)
    return FourierSeries(c)

import numpy as np
import pytest

from bbsim import build_channels, default_config


class ZeroNoise:
    """Stand-in noise source producing exact zeros (noiseless paths)."""

    def standard_normal(self, shape):
        return np.zeros(shape)


@pytest.fixture
def zero_noise():
    return ZeroNoise()


@pytest.fixture(scope="session")
def table_config():
    return default_config(seed=7)


@pytest.fixture(scope="session")
def table_channels(table_config):
    return build_channels(table_config.scene)

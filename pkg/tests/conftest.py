import numpy as np
import pytest

from cavityvac import CavityConfig, Region, ThreeRegion, TwoRegion, build_tables
from cavityvac.gaussian import assemble


@pytest.fixture(scope="session")
def half_tables():
    """Two-region split at R/2, mu=0, N=200, M=4000."""
    return build_tables(TwoRegion(0.5), CavityConfig(N=200))


@pytest.fixture(scope="session")
def half_sigma(half_tables):
    return assemble([half_tables[Region.LEFT], half_tables[Region.RIGHT]])


@pytest.fixture(scope="session")
def small_cfg():
    return CavityConfig(N=16, M=320)


@pytest.fixture(scope="session")
def three_tables(small_cfg):
    return build_tables(ThreeRegion.centered(1.0, 0.2), small_cfg)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)

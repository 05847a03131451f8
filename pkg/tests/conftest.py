import numpy as np
import pytest

from isacsim import NetworkParams, ScenarioGeometry


@pytest.fixture(scope="session")
def params() -> NetworkParams:
    return NetworkParams(lam=1e-5, eta=4.0, sigma2=0.0, p_l=1.0, p_h=5.0,
                         m_slots=10, p_r=1.0)


@pytest.fixture(scope="session")
def geom(params) -> ScenarioGeometry:
    return ScenarioGeometry.in_v_units(params.lam, r1=5.0, r2=15.0, r_r=5.0)


@pytest.fixture(scope="session")
def theta_grid() -> np.ndarray:
    return 10.0 ** (np.arange(-50.0, 10.0 + 1e-9, 2.0) / 10.0)


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20240917)

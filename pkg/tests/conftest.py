import numpy as np
import pytest

from config.app_config import AppConfigModel, ConfigModel, GridConfigModel
from src.models.grid import RadialGrid, windowed_polynomial


@pytest.fixture
def small_grid():
    return RadialGrid(-8.0, 4.0, 256)


@pytest.fixture
def boundary_grid():
    """Long enough toward zero to separate x^(1/2+m) from x^(1/2-m) at m = 0.1."""
    return RadialGrid(-14.0, 10.0, 1024)


@pytest.fixture
def form_grid():
    return RadialGrid(-12.0, 12.0, 1024)


@pytest.fixture
def rng():
    return np.random.default_rng(20240101)


@pytest.fixture
def bump():
    """Factory for Gaussian-windowed polynomials in log x."""
    return windowed_polynomial


@pytest.fixture
def config():
    return ConfigModel(
        app=AppConfigModel(name="Bessel Operator Domain Lab", version="test"),
        grid=GridConfigModel(t_min=-12.0, t_max=12.0, n=512),
    )

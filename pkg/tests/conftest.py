"""Test configuration."""
import pytest
import sys
from pathlib import Path

import numpy as np

# Add src to path
src_path = Path(__file__).parent.parent / 'src'
sys.path.insert(0, str(src_path))

from src.complexes import octahedron, sixteen_cell  # noqa: E402
from src.metricfield import ModelChart  # noqa: E402
from src.widths import RadiusSchedule  # noqa: E402


@pytest.fixture
def rng():
    """Seeded generator shared by the sampling tests."""
    return np.random.default_rng(20240917)


@pytest.fixture
def chart_1d():
    """T_xi with n = 1, xi = 1 at the default step."""
    return ModelChart(n=1, xi=1.0, grid_step=0.125)


@pytest.fixture
def chart_2d():
    """T_xi with n = 2, xi = 1 at a coarse step."""
    return ModelChart(n=2, xi=1.0, grid_step=0.25)


@pytest.fixture
def octa():
    return octahedron()


@pytest.fixture
def sixteen():
    return sixteen_cell()


@pytest.fixture
def octa_schedule():
    """r_0 = 20 over the octahedron with the sampling-friendly defaults."""
    return RadiusSchedule.from_top(20.0, 2, 0.005, 1.1, 0.5)

"""Shared fixtures."""

import pytest

from src.exciton.models import QuadratureSpec
from src.exciton.oracle import GridSpec


@pytest.fixture(scope="session")
def quad() -> QuadratureSpec:
    """Default quadrature, independent of EXCITON_* environment overrides."""
    return QuadratureSpec()


@pytest.fixture(scope="session")
def oracle_grid() -> GridSpec:
    return GridSpec(half_length=25.0, n_points=10000)

import pytest
from pydantic import ValidationError

from src.core.exceptions import ConfigurationError, DomainError
from src.exciton.units import PhysicalParams, convert_radius
from src.services.exciton_service import ExcitonService


def test_bare_hydrogen_units():
    phys = PhysicalParams(epsilon=1.0, mu=1.0)
    assert phys.bohr_radius_angstrom == pytest.approx(0.529)
    assert phys.rydberg_scale == 1.0
    assert convert_radius(0.529, phys).r == pytest.approx(1.0)


def test_screened_units():
    phys = PhysicalParams(epsilon=3.5, mu=1.0)
    assert phys.bohr_radius_angstrom == pytest.approx(1.8515)
    assert convert_radius(1.8515, phys).r == pytest.approx(1.0)
    assert PhysicalParams(epsilon=2.0, mu=0.5).rydberg_scale == pytest.approx(0.125)


@pytest.mark.parametrize("r_angstrom", [0.0, -1.0])
def test_non_positive_radius(r_angstrom):
    with pytest.raises(DomainError):
        convert_radius(r_angstrom, PhysicalParams(epsilon=1.0, mu=1.0))


@pytest.mark.parametrize("epsilon, mu", [(0.0, 1.0), (1.0, -0.2)])
def test_invalid_material(epsilon, mu):
    with pytest.raises(ValidationError):
        PhysicalParams(epsilon=epsilon, mu=mu)


def test_service_conversion(quad, oracle_grid):
    service = ExcitonService(quad, oracle_grid)
    conversion = service.convert_units(5.29, epsilon=10.0, mu=1.0)
    assert conversion.a_B_angstrom == pytest.approx(5.29)
    assert conversion.r == pytest.approx(1.0)
    with pytest.raises(ConfigurationError):
        service.convert_units(1.0, epsilon=0.0, mu=1.0)

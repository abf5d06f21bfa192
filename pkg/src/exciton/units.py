"""Conversion between physical radii and excitonic units."""
from pydantic import BaseModel, ConfigDict, Field

from src.core.exceptions import DomainError
from src.core.logging_config import logger
from src.exciton.models import Radius

# Hydrogen Bohr radius in Å
BOHR_RADIUS_ANGSTROM = 0.529
TYPICAL_NANOTUBE_RADIUS = 0.1


class PhysicalParams(BaseModel):
    """Dielectric constant ε and reduced effective mass μ (bare electron masses)."""
    model_config = ConfigDict(frozen=True)

    epsilon: float = Field(gt=0)
    mu: float = Field(gt=0)

    @property
    def bohr_radius_angstrom(self) -> float:
        """a_B* = 0.529 Å · ε / μ"""
        return BOHR_RADIUS_ANGSTROM * self.epsilon / self.mu

    @property
    def rydberg_scale(self) -> float:
        """Ry* / Ry = μ / ε²"""
        return self.mu / self.epsilon**2


def convert_radius(r_angstrom: float, phys: PhysicalParams) -> Radius:
    """Tube radius in Å to units of the effective Bohr radius."""
    if not r_angstrom > 0:
        raise DomainError(f"Radius in Å must be positive, got {r_angstrom}")
    radius = Radius(r_angstrom / phys.bohr_radius_angstrom)
    if abs(radius.r - TYPICAL_NANOTUBE_RADIUS) <= 0.2 * TYPICAL_NANOTUBE_RADIUS:
        logger.info(f"r ≈ 0.1 a_B* ({radius.r:.4g}), the typical value for carbon nanotubes")
    return radius

"""
Domain types shared by every solver module.

Energies are in effective Rydbergs and lengths in effective Bohr radii
with the reduced mass set to one. The transverse circumference of the
cylinder is 2πr; only the lowest transverse mode enters the 1D models.
"""
import math
import re
from dataclasses import dataclass
from enum import Enum
from typing import Union

from pydantic import BaseModel, ConfigDict, Field

from src.core.config import settings
from src.core.exceptions import AccuracyError, DomainError

# Euler–Mascheroni constant
EULER_GAMMA = 0.57721566490153286060651209008240243


@dataclass(frozen=True)
class SpecialValue:
    """A special-function value together with an absolute error estimate."""
    value: float
    est_abs_error: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise AccuracyError(f"Non-finite special function value: {self.value}")
        if not (math.isfinite(self.est_abs_error) and self.est_abs_error >= 0):
            raise AccuracyError(f"Invalid error estimate: {self.est_abs_error}")

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class FormValue:
    """A quadratic-form value with the accumulated quadrature error estimate."""
    value: float
    quadrature_error: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.value) or not math.isfinite(self.quadrature_error):
            raise AccuracyError(
                f"Quadrature produced a non-finite form value ({self.value} ± {self.quadrature_error})"
            )

    def __float__(self) -> float:
        return self.value


class Parity(str, Enum):
    EVEN = "s"
    ODD = "p"


_LABEL_PATTERN = re.compile(r"^\s*(\d+)\s*([spSP])\s*$")


@dataclass(frozen=True)
class StateLabel:
    """
    Bound-state label `n s` / `n p`: n is the smallest integer not below α.

    There is no 1p state, so odd labels start at n = 2.
    """
    n: int
    parity: Parity

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"Principal index must be >= 1, got {self.n}")
        if self.parity is Parity.ODD and self.n < 2:
            raise DomainError("Odd states start at n = 2 (there is no 1p state)")

    @classmethod
    def parse(cls, text: str) -> "StateLabel":
        match = _LABEL_PATTERN.match(text)
        if match is None:
            raise DomainError(f"Cannot parse state label '{text}' (expected e.g. 1s, 2p)")
        return cls(int(match.group(1)), Parity(match.group(2).lower()))

    @property
    def is_even(self) -> bool:
        return self.parity is Parity.EVEN

    def __str__(self) -> str:
        return f"{self.n}{self.parity.value}"


@dataclass(frozen=True)
class EigenSolution:
    """
    A solved bound state of the one-dimensional Coulomb model.

    `energy` is stored as −1/alpha² once and never recomputed. `norm_const`
    is C_α for even states and 1/(2N), N = n − 1, for odd states; both make
    the eigenfunction unit-norm on the full z-line.
    """
    label: StateLabel
    alpha: float
    energy: float
    norm_const: float
    r: "Radius"


@dataclass(frozen=True)
class BoundaryResidual:
    value: float
    epsilon_used: float


@dataclass(frozen=True)
class Radius:
    """
    Nanotube radius in units of the effective Bohr radius.

    The approximation chain behind the Coulomb model assumes r <= 1;
    larger radii are accepted but flagged through `in_validity_regime`.
    """
    r: float

    def __post_init__(self):
        if not (math.isfinite(self.r) and self.r > 0):
            raise DomainError(f"Radius must be positive and finite, got r={self.r}")

    @property
    def in_validity_regime(self) -> bool:
        return self.r <= 1.0

    def __float__(self) -> float:
        return self.r


RadiusLike = Union[float, int, Radius]


def as_radius(value: RadiusLike) -> Radius:
    """Accept a bare number or a Radius and return a Radius."""
    if isinstance(value, Radius):
        return value
    return Radius(float(value))


class QuadratureSpec(BaseModel):
    """
    Integration parameters shared by every quadrature-based operation.

    `x_nodes`/`y_nodes` are the Gauss–Legendre node counts of the fixed
    tensor rules used for the cylinder integrals; `limit`, `epsabs` and
    `epsrel` drive the adaptive one-dimensional rules; `tail_length` is the
    extent (in e-folds) kept beyond a logarithmic substitution.
    """
    model_config = ConfigDict(frozen=True)

    x_nodes: int = Field(default=96, ge=8)
    y_nodes: int = Field(default=64, ge=8)
    limit: int = Field(default=200, ge=10)
    epsabs: float = Field(default=1e-13, gt=0)
    epsrel: float = Field(default=1e-12, gt=0)
    tail_length: float = Field(default=40.0, gt=0)

    def refined(self) -> "QuadratureSpec":
        """Same scheme with doubled resolution (used for convergence checks)."""
        return self.model_copy(
            update={
                "x_nodes": 2 * self.x_nodes,
                "y_nodes": 2 * self.y_nodes,
                "limit": 2 * self.limit,
            }
        )

    @classmethod
    def from_panels(cls, panels: int) -> "QuadratureSpec":
        """Scale the tensor rule from a single panel count (the --quad-panels flag)."""
        values = cls.from_settings().model_dump()
        values.update(x_nodes=panels, y_nodes=max(8, (2 * panels) // 3))
        return cls(**values)

    @classmethod
    def from_settings(cls) -> "QuadratureSpec":
        return cls(
            x_nodes=settings.quad_x_nodes,
            y_nodes=settings.quad_y_nodes,
            limit=settings.quad_limit,
            epsabs=settings.quad_epsabs,
            epsrel=settings.quad_epsrel,
        )

"""API routes for the exciton library (read-only computations)."""

from typing import Annotated, List

from fastapi import APIRouter, Depends, Query
from pydantic import BaseModel

from src.api.dependencies import get_exciton_service
from src.core.logging_config import logger
from src.services.exciton_service import ExcitonService, UnitConversion, VariationalReport

router = APIRouter()

Service = Annotated[ExcitonService, Depends(get_exciton_service)]


class PotentialResponse(BaseModel):
    """Effective potential at one point, closed form against quadrature."""
    r: float
    x: float
    v_eff: float
    v_eff_quadrature: float
    rel_diff: float


class StateResponse(BaseModel):
    label: str
    parity: str
    alpha: float
    energy: float
    norm_const: float


class SpectrumResponse(BaseModel):
    """Lowest bound states of the Coulomb model, sorted by energy."""
    r: float
    units: str = "Ry*"
    states: List[StateResponse]


@router.get("/potential", response_model=PotentialResponse)
def get_potential(
    service: Service,
    r: Annotated[float, Query(gt=0, description="Tube radius in a_B*")],
    x: Annotated[float, Query(description="Longitudinal separation in a_B*, nonzero")],
):
    point = service.potential_point(r, x)
    return PotentialResponse(r=r, **point)


@router.get("/spectrum", response_model=SpectrumResponse)
def get_spectrum(
    service: Service,
    r: Annotated[float, Query(gt=0, description="Tube radius in a_B*")],
    count: Annotated[int, Query(ge=1, le=20, description="Number of states")] = 4,
):
    logger.info(f"Spectrum request: r={r:g}, count={count}")
    states = [
        StateResponse(
            label=str(sol.label),
            parity=sol.label.parity.name.lower(),
            alpha=sol.alpha,
            energy=sol.energy,
            norm_const=sol.norm_const,
        )
        for sol in service.spectrum(r, count)
    ]
    return SpectrumResponse(r=r, states=states)


@router.get("/variational", response_model=VariationalReport)
def get_variational(
    service: Service,
    r: Annotated[float, Query(gt=0, description="Tube radius in a_B*")],
    state: Annotated[str, Query(pattern="^(1s|2p)$")] = "2p",
):
    """
    Minimise the trial energy of `state` at radius `r`.

    Runs in the threadpool: a minimisation takes seconds.
    """
    return VariationalReport.from_result(service.variational(r, state))


@router.get("/convert-units", response_model=UnitConversion)
def get_convert_units(
    service: Service,
    r_angstrom: Annotated[float, Query(gt=0)],
    epsilon: Annotated[float, Query(gt=0)] = 1.0,
    mu: Annotated[float, Query(gt=0)] = 1.0,
):
    return service.convert_units(r_angstrom, epsilon, mu)

"""
Facade over the numerical library shared by the CLI and the HTTP API.

Every public computation of the package goes through ExcitonService so
that quadrature settings, root tolerance, oracle grid and sweep
concurrency are configured in one place (the dependency container).
"""

from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ValidationError

from src.core.exceptions import ConfigurationError
from src.core.logging_config import logger
from src.exciton.coulomb import spectrum
from src.exciton.engines import BaseEngine, CoulombEngine, OracleEngine, VariationalEngine
from src.exciton.engines.constants import (
    COMPARE_COLUMN_ORDER,
    COMPARE_MODEL_STATES,
    COULOMB,
    MODEL_PREFIX,
    ORACLE,
    VARIATIONAL,
    VARIATIONAL_STATES,
)
from src.exciton.models import EigenSolution, QuadratureSpec, RadiusLike, StateLabel, as_radius
from src.exciton.oracle import GridSpec
from src.exciton.potential import v_eff, v_eff_quadrature
from src.exciton.sweep_runner import SweepConfig, SweepRunner
from src.exciton.units import PhysicalParams, convert_radius
from src.exciton.variational import TrialParams, VariationalResult, minimize_state
from src.utils.formatting import ResultTable

RECONSTRUCTED_TRIAL_NOTE = "E_var_1s uses the reconstructed even trial exp(-rho)"


class VariationalReport(BaseModel):
    """JSON document written by the `variational` command and returned by the API."""

    r: float
    state: str
    k: float
    q: float
    energy: float
    K: float
    V: float
    N: float
    iterations: int
    converged: bool

    @classmethod
    def from_result(cls, result: VariationalResult) -> "VariationalReport":
        breakdown = result.breakdown
        return cls(
            r=result.r.r,
            state=str(result.state),
            k=result.params.k,
            q=result.params.q,
            energy=breakdown.energy,
            K=breakdown.kinetic,
            V=breakdown.potential,
            N=breakdown.norm,
            iterations=result.iterations,
            converged=result.converged,
        )


class UnitConversion(BaseModel):
    r_angstrom: float
    epsilon: float
    mu: float
    a_B_angstrom: float
    r: float


def build_sweep_config(**values) -> SweepConfig:
    """SweepConfig from keyword values, with validation failures as ConfigurationError."""
    try:
        return SweepConfig(**{key: value for key, value in values.items() if value is not None})
    except ValidationError as exc:
        messages = "; ".join(
            f"{'.'.join(str(part) for part in error['loc']) or 'sweep'}: {error['msg']}"
            for error in exc.errors()
        )
        raise ConfigurationError(f"Invalid sweep: {messages}") from None


class ExcitonService:
    """
    Runs the library operations with a fixed numerical configuration.

    Args:
        quad: Quadrature parameters for forms and variational energies
        grid: Finite-difference grid of the oracle
        root_tol: Tolerance on α for the even-state root finder (None: settings)
        max_workers: Thread pool size for sweeps
    """

    def __init__(
        self,
        quad: QuadratureSpec,
        grid: GridSpec,
        root_tol: Optional[float] = None,
        max_workers: int = SweepRunner.DEFAULT_MAX_WORKERS,
    ):
        self.quad = quad
        self.grid = grid
        self.root_tol = root_tol
        self.max_workers = max_workers

    # -- potential -------------------------------------------------------

    def potential_point(self, r: RadiusLike, x: float) -> Dict[str, float]:
        radius = as_radius(r)
        closed = float(v_eff(x, radius))
        quadrature = v_eff_quadrature(x, radius, self.quad)
        return {
            "x": float(x),
            "v_eff": closed,
            "v_eff_quadrature": quadrature.value,
            "rel_diff": abs(closed - quadrature.value) / abs(closed),
        }

    def potential_table(self, r: RadiusLike, x_min: float, x_max: float, n: int) -> ResultTable:
        """
        Closed-form and quadrature V_eff on a uniform x grid.

        Raises:
            ConfigurationError: n < 2 or x_min >= x_max
            DomainError: the grid hits x = 0
        """
        if n < 2:
            raise ConfigurationError(f"Potential grid needs at least 2 points, got {n}")
        if not x_min < x_max:
            raise ConfigurationError(f"x_min={x_min} must be smaller than x_max={x_max}")
        radius = as_radius(r)
        logger.info(f"Tabulating V_eff at r={radius.r:g} on [{x_min:g}, {x_max:g}] with {n} points")
        rows = [self.potential_point(radius, float(x)) for x in np.linspace(x_min, x_max, n)]
        return ResultTable(columns=["x", "v_eff", "v_eff_quadrature", "rel_diff"], rows=rows)

    # -- Coulomb model ---------------------------------------------------

    def spectrum(self, r: RadiusLike, count: int) -> List[EigenSolution]:
        return spectrum(r, count, self.root_tol)

    def _engines(self, config: SweepConfig, include_alpha: bool) -> List[BaseEngine]:
        engines: List[BaseEngine] = []
        for name in config.engines:
            if name == COULOMB:
                engines.append(
                    CoulombEngine(config.labels, self.root_tol, include_alpha=include_alpha)
                )
            elif name == VARIATIONAL:
                trial_states = [label for label in config.labels if str(label) in VARIATIONAL_STATES]
                if not trial_states:
                    raise ConfigurationError(
                        f"The variational engine needs one of {list(VARIATIONAL_STATES)} in states"
                    )
                engines.append(VariationalEngine(trial_states, self.quad))
            elif name == ORACLE:
                engines.append(OracleEngine(self.grid))
        return engines

    def spectrum_sweep(self, config: SweepConfig, include_alpha: bool = False) -> ResultTable:
        """Energies of `config.states` over the r grid for every selected engine."""
        runner = SweepRunner(self._engines(config, include_alpha), self.max_workers)
        rows = runner.run(config.radii())
        return ResultTable(columns=runner.columns, rows=rows)

    # -- variational -----------------------------------------------------

    def variational(
        self, r: RadiusLike, state: str, init: Optional[TrialParams] = None
    ) -> VariationalResult:
        label = StateLabel.parse(state)
        result = minimize_state(label, r, self.quad, init)
        logger.info(
            f"Variational {label} at r={result.r.r:g}: E={result.energy:.10f} "
            f"(k={result.params.k:.6g}, q={result.params.q:.6g}, converged={result.converged})"
        )
        return result

    # -- comparison harness ----------------------------------------------

    def compare_sweep(self, config: SweepConfig, oracle: bool = False) -> ResultTable:
        """
        Coulomb model, variational and (optionally) finite-difference energies side by side.

        The state list of `config` is ignored: the comparison always covers
        the model 1s, 2p and 2s states and the 1s and 2p trials.
        """
        model_states = [StateLabel.parse(label) for label in COMPARE_MODEL_STATES]
        trial_states = [StateLabel.parse(label) for label in VARIATIONAL_STATES]
        engines: List[BaseEngine] = [
            CoulombEngine(model_states, self.root_tol, prefix=MODEL_PREFIX),
            VariationalEngine(trial_states, self.quad),
        ]
        if oracle or ORACLE in config.engines:
            engines.append(OracleEngine(self.grid))
        logger.warning(RECONSTRUCTED_TRIAL_NOTE)
        runner = SweepRunner(engines, self.max_workers, column_order=COMPARE_COLUMN_ORDER)
        rows = runner.run(config.radii())
        return ResultTable(columns=runner.columns, rows=rows, notes=[RECONSTRUCTED_TRIAL_NOTE])

    # -- units -----------------------------------------------------------

    def convert_units(self, r_angstrom: float, epsilon: float, mu: float) -> UnitConversion:
        try:
            phys = PhysicalParams(epsilon=epsilon, mu=mu)
        except ValidationError as exc:
            raise ConfigurationError(
                f"epsilon and mu must be positive, got epsilon={epsilon}, mu={mu}"
            ) from exc
        radius = convert_radius(r_angstrom, phys)
        return UnitConversion(
            r_angstrom=r_angstrom,
            epsilon=epsilon,
            mu=mu,
            a_B_angstrom=phys.bohr_radius_angstrom,
            r=radius.r,
        )


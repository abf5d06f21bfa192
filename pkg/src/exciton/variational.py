"""
Two-parameter variational energies on the cylinder surface.

Trial states use the anisotropic radius ρ̃ = √(x²/k² + y²/q²):

    2p:  φ = x exp(−ρ̃)     (odd in x, orthogonal to every even state)
    1s:  φ = exp(−ρ̃)       (companion even trial, a reconstruction)

with x along the tube and y the arc length in [−πr, πr]. The Rayleigh
quotient E = (K − V)/N uses N = ∫φ², K = ∫|∇φ|² and V = ∫ 2 v_exact φ².
"""
import math
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from src.core.exceptions import AccuracyError, DomainError
from src.core.logging_config import logger
from src.exciton.models import (
    EULER_GAMMA,
    Parity,
    QuadratureSpec,
    Radius,
    RadiusLike,
    StateLabel,
    as_radius,
)
from src.exciton.potential import v_exact
from src.exciton.quadrature import gauss_legendre

LOG_BOUNDS = (math.log(1e-4), math.log(1e4))
SIMPLEX_STEP = 0.25
XATOL = 1e-6
FATOL = 1e-10
MAX_ITERATIONS = 500
# objective value returned when a trial cannot be integrated
_PENALTY = 1e10

STATE_1S = StateLabel(1, Parity.EVEN)
STATE_2P = StateLabel(2, Parity.ODD)


@dataclass(frozen=True)
class TrialParams:
    """Longitudinal (k) and transverse (q) decay lengths in units of a_B*."""
    k: float
    q: float

    def __post_init__(self):
        for name, value in (("k", self.k), ("q", self.q)):
            if not (math.isfinite(value) and value > 0):
                raise DomainError(f"Trial parameter {name} must be positive and finite, got {value}")

    @classmethod
    def from_log(cls, theta: Sequence[float]) -> "TrialParams":
        return cls(math.exp(theta[0]), math.exp(theta[1]))

    def to_log(self) -> np.ndarray:
        return np.array([math.log(self.k), math.log(self.q)])


@dataclass(frozen=True)
class EnergyBreakdown:
    kinetic: float
    potential: float
    norm: float
    energy: float

    def __post_init__(self):
        if not self.norm > 0:
            raise AccuracyError(f"Trial norm must be positive, got {self.norm}")
        if not math.isfinite(self.energy):
            raise AccuracyError("Variational energy is not finite")


@dataclass(frozen=True)
class VariationalResult:
    """Best trial found by the simplex search."""
    params: TrialParams
    breakdown: EnergyBreakdown
    iterations: int
    converged: bool
    state: StateLabel
    r: Radius

    @property
    def energy(self) -> float:
        return self.breakdown.energy


# ---------------------------------------------------------------------------
# Trial functions
# ---------------------------------------------------------------------------

TrialFields = Callable[[np.ndarray, np.ndarray, TrialParams], Tuple[np.ndarray, np.ndarray, np.ndarray]]


def _anisotropic_radius(x, y, p: TrialParams):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return x, y, np.sqrt((x / p.k) ** 2 + (y / p.q) ** 2)


def trial_2p(x, y, p: TrialParams):
    """x exp(−√(x²/k² + y²/q²))"""
    x, _, rho = _anisotropic_radius(x, y, p)
    value = x * np.exp(-rho)
    return float(value) if value.ndim == 0 else value


def trial_1s(x, y, p: TrialParams):
    """exp(−√(x²/k² + y²/q²))"""
    _, _, rho = _anisotropic_radius(x, y, p)
    value = np.exp(-rho)
    return float(value) if value.ndim == 0 else value


def _fields_2p(x, y, p: TrialParams):
    x, y, rho = _anisotropic_radius(x, y, p)
    decay = np.exp(-rho)
    phi = x * decay
    d_dx = decay * (1.0 - x * x / (p.k**2 * rho))
    d_dy = -phi * y / (p.q**2 * rho)
    return phi, d_dx, d_dy


def _fields_1s(x, y, p: TrialParams):
    x, y, rho = _anisotropic_radius(x, y, p)
    decay = np.exp(-rho)
    d_dx = -decay * x / (p.k**2 * rho)
    d_dy = -decay * y / (p.q**2 * rho)
    return decay, d_dx, d_dy


_FIELDS = {STATE_2P: _fields_2p, STATE_1S: _fields_1s}


# ---------------------------------------------------------------------------
# Quadrature on the quarter domain x > 0, 0 < y < πr
# ---------------------------------------------------------------------------

def _quarter_grid(radius: float, p: TrialParams, quad: QuadratureSpec):
    """
    Tensor Gauss–Legendre grid and weights for the quarter domain.

    x = k sinh(T u³), u ∈ [0, 1]: the cubic grading absorbs the logarithmic
    behaviour of the y-integrated Coulomb term at x → 0.
    y = w sinh(s), s ∈ [0, asinh(πr/w)], w = x·min(1, q/k): uniform in s
    across both the 1/ρ peak of the potential and the trial's own y scale.
    """
    u, wu = gauss_legendre(quad.x_nodes)
    t, wt = gauss_legendre(quad.y_nodes)

    stretch = math.asinh(0.5 * quad.tail_length)
    x = p.k * np.sinh(stretch * u**3)
    wx = wu * p.k * np.cosh(stretch * u**3) * 3.0 * stretch * u**2

    width = x * min(1.0, p.q / p.k)
    s_max = np.arcsinh(math.pi * radius / width)
    s = s_max[:, None] * t[None, :]
    y = width[:, None] * np.sinh(s)
    wy = (width * s_max)[:, None] * np.cosh(s) * wt[None, :]

    xx = np.broadcast_to(x[:, None], y.shape)
    weights = wx[:, None] * wy
    return xx, y, weights


def rayleigh_quotient(
    state: StateLabel,
    r: RadiusLike,
    p: TrialParams,
    quad: QuadratureSpec,
    amplitude: float = 1.0,
) -> EnergyBreakdown:
    """
    K, V, N and E = (K − V)/N for the trial of `state` (1s or 2p).

    `amplitude` multiplies the trial; the energy does not depend on it.
    """
    try:
        fields = _FIELDS[state]
    except KeyError:
        raise DomainError(f"No variational trial for state {state} (use 1s or 2p)") from None
    radius = as_radius(r)
    x, y, weights = _quarter_grid(radius.r, p, quad)
    phi, d_dx, d_dy = (amplitude * f for f in fields(x, y, p))
    density = phi * phi

    norm = 4.0 * float(np.sum(weights * density))
    kinetic = 4.0 * float(np.sum(weights * (d_dx * d_dx + d_dy * d_dy)))
    potential = 4.0 * float(np.sum(weights * 2.0 * v_exact(x, y, radius) * density))
    if not all(math.isfinite(v) for v in (norm, kinetic, potential)):
        raise AccuracyError(f"Non-finite variational integrals for {state} at k={p.k}, q={p.q}")
    return EnergyBreakdown(
        kinetic=kinetic,
        potential=potential,
        norm=norm,
        energy=(kinetic - potential) / norm,
    )


def energy_2p(r: RadiusLike, p: TrialParams, quad: QuadratureSpec) -> EnergyBreakdown:
    return rayleigh_quotient(STATE_2P, r, p, quad)


def energy_1s(r: RadiusLike, p: TrialParams, quad: QuadratureSpec) -> EnergyBreakdown:
    return rayleigh_quotient(STATE_1S, r, p, quad)


def trial_overlap(r: RadiusLike, p: TrialParams, quad: QuadratureSpec) -> float:
    """∫∫ φ_2p φ_1s over the full domain, on a grid mirrored in x."""
    radius = as_radius(r)
    x, y, weights = _quarter_grid(radius.r, p, quad)
    full_x = np.concatenate([-x, x])
    full_y = np.concatenate([y, y])
    full_w = np.concatenate([weights, weights])
    integrand = trial_2p(full_x, full_y, p) * trial_1s(full_x, full_y, p)
    # y ↦ −y mirror doubles the result
    return 2.0 * float(np.sum(full_w * integrand))


# ---------------------------------------------------------------------------
# Minimisation
# ---------------------------------------------------------------------------

def default_seeds(state: StateLabel, r: RadiusLike) -> List[TrialParams]:
    """Plane-limit, wire-limit and isotropic starting points."""
    radius = as_radius(r).r
    plane = 1.5 if state == STATE_2P else 0.5
    wire_k = 1.0 if state == STATE_2P else 0.5
    return [
        TrialParams(plane, plane),
        TrialParams(wire_k, radius),
        TrialParams(1.0, 1.0),
    ]


def _initial_simplex(theta: np.ndarray) -> np.ndarray:
    high = LOG_BOUNDS[1]
    simplex = [theta]
    for axis in range(theta.size):
        vertex = theta.copy()
        vertex[axis] += SIMPLEX_STEP if theta[axis] + SIMPLEX_STEP <= high else -SIMPLEX_STEP
        simplex.append(vertex)
    return np.array(simplex)


def _minimize_state(
    state: StateLabel,
    r: RadiusLike,
    quad: QuadratureSpec,
    seeds: Iterable[TrialParams],
) -> VariationalResult:
    radius = as_radius(r)
    if not radius.in_validity_regime:
        logger.info(f"Variational {state}: r={radius.r:g} > 1, approaching the plane limit")

    def objective(theta):
        try:
            return rayleigh_quotient(state, radius, TrialParams.from_log(theta), quad).energy
        except (AccuracyError, DomainError) as exc:
            logger.debug(f"Variational objective rejected theta={theta}: {exc}")
            return _PENALTY

    best = None
    for seed in seeds:
        theta0 = np.clip(seed.to_log(), *LOG_BOUNDS)
        result = minimize(
            objective,
            theta0,
            method="Nelder-Mead",
            bounds=[LOG_BOUNDS, LOG_BOUNDS],
            options={
                "xatol": XATOL,
                "fatol": FATOL,
                "maxiter": MAX_ITERATIONS,
                "initial_simplex": _initial_simplex(theta0),
            },
        )
        logger.debug(
            f"{state} r={radius.r:g} seed k={seed.k:g} q={seed.q:g}: "
            f"E={result.fun:.10f} after {result.nit} iterations ({result.message})"
        )
        if best is None or result.fun < best.fun:
            best = result

    if best is None:
        raise DomainError("At least one seed is required")
    params = TrialParams.from_log(best.x)
    breakdown = rayleigh_quotient(state, radius, params, quad)
    if not best.success:
        logger.warning(
            f"Variational {state} at r={radius.r:g} stopped before convergence: {best.message}"
        )
    return VariationalResult(
        params=params,
        breakdown=breakdown,
        iterations=int(best.nit),
        converged=bool(best.success),
        state=state,
        r=radius,
    )


def minimize_2p(
    r: RadiusLike, quad: QuadratureSpec, init: Optional[TrialParams] = None
) -> VariationalResult:
    """
    Nelder–Mead on (ln k, ln q) for the 2p trial.

    Without `init` the search restarts from the three default seeds and
    keeps the lowest energy; with `init` only that seed is used.
    """
    seeds = [init] if init is not None else default_seeds(STATE_2P, r)
    return _minimize_state(STATE_2P, r, quad, seeds)


def minimize_1s(
    r: RadiusLike, quad: QuadratureSpec, init: Optional[TrialParams] = None
) -> VariationalResult:
    """Same search for the reconstructed even trial exp(−ρ̃)."""
    seeds = [init] if init is not None else default_seeds(STATE_1S, r)
    return _minimize_state(STATE_1S, r, quad, seeds)


def minimize_state(
    state: StateLabel, r: RadiusLike, quad: QuadratureSpec, init: Optional[TrialParams] = None
) -> VariationalResult:
    if state == STATE_2P:
        return minimize_2p(r, quad, init)
    if state == STATE_1S:
        return minimize_1s(r, quad, init)
    raise DomainError(f"No variational trial for state {state} (use 1s or 2p)")


def small_r_correction(r: RadiusLike) -> float:
    """Small-radius 2p energy −1 − 8 (1 + γ + ln r) r²."""
    radius = as_radius(r).r
    if radius >= 1.0:
        raise DomainError(f"small_r_correction needs 0 < r < 1, got r={radius}")
    return -1.0 - 8.0 * (1.0 + EULER_GAMMA + math.log(radius)) * radius**2

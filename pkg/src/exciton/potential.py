"""
Potential-energy objects on the cylinder.

All potentials are returned as positive magnitudes; the attraction lives in
the Hamiltonian as −2V. Quadratic forms act on a single real test function f
and are evaluated by quadrature with the logarithmic singularity at x = 0
treated explicitly.
"""
import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from src.core.exceptions import DomainError
from src.core.logging_config import logger
from src.exciton.models import FormValue, QuadratureSpec, RadiusLike, as_radius
from src.exciton.quadrature import integrate
from src.exciton.specfun import elliptic_k_complement

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class FormFunction:
    """
    A smooth real function with its analytic derivative.

    `scale` is the length on which f varies; quadrature splits around it.
    """

    f: Callable[[float], float]
    df: Callable[[float], float]
    scale: float = 1.0

    def __post_init__(self):
        if not self.scale > 0:
            raise DomainError(f"Form function scale must be positive, got {self.scale}")

    def density(self, x: float) -> float:
        value = self.f(x)
        return value * value

    def density_derivative(self, x: float) -> float:
        return 2.0 * self.f(x) * self.df(x)

    @classmethod
    def gaussian(cls, width: float = 1.0) -> "FormFunction":
        """exp(−x²/width²)"""
        return cls(
            f=lambda x: math.exp(-((x / width) ** 2)),
            df=lambda x: -2.0 * x / width**2 * math.exp(-((x / width) ** 2)),
            scale=width,
        )

    @classmethod
    def exponential(cls, decay: float = 1.0) -> "FormFunction":
        """exp(−|x|/decay)"""
        return cls(
            f=lambda x: math.exp(-abs(x) / decay),
            df=lambda x: -math.copysign(1.0, x) / decay * math.exp(-abs(x) / decay) if x else 0.0,
            scale=decay,
        )

    @classmethod
    def odd_gaussian(cls, width: float = 1.0) -> "FormFunction":
        """x exp(−x²/width²), vanishing at the origin."""
        return cls(
            f=lambda x: x * math.exp(-((x / width) ** 2)),
            df=lambda x: (1.0 - 2.0 * x * x / width**2) * math.exp(-((x / width) ** 2)),
            scale=width,
        )


def _symmetrised(f: FormFunction) -> Callable[[float], float]:
    """t ↦ |f(t)|² + |f(−t)|² on t >= 0."""
    return lambda t: f.density(t) + f.density(-t)


def _log_kernel(f: FormFunction) -> Callable[[float], float]:
    """h(t) = (|f|²)'(−t) − (|f|²)'(t), so that C_0 = ∫_0^∞ ln t · h(t) dt."""
    return lambda t: f.density_derivative(-t) - f.density_derivative(t)


# ---------------------------------------------------------------------------
# Potentials
# ---------------------------------------------------------------------------

def v_exact(x: ArrayLike, y: ArrayLike, r: RadiusLike) -> ArrayLike:
    """
    Coulomb potential magnitude between two points on the cylinder surface:

        1 / √(x² + 4r² sin²(y / 2r)),

    x longitudinal, y the arc length around the circumference (period 2πr).

    Raises:
        DomainError: coincident points (x = 0 and y ≡ 0).
    """
    radius = as_radius(r).r
    x = np.asarray(x, dtype=float)
    chord = 2.0 * radius * np.sin(np.asarray(y, dtype=float) / (2.0 * radius))
    distance2 = x * x + chord * chord
    if np.any(distance2 == 0.0):
        raise DomainError("v_exact is singular at coincident points (x=0, y≡0)")
    value = 1.0 / np.sqrt(distance2)
    return float(value) if value.ndim == 0 else value


def v_eff(x: ArrayLike, r: RadiusLike) -> ArrayLike:
    """
    Transverse average of v_exact over the lowest circumferential mode,

        V_eff(x) = 2 K(m) / (π √(x² + 4r²)),   m = 4r² / (x² + 4r²).

    The complement 1 − m = x² / (x² + 4r²) feeds the AGM directly so the
    logarithmic growth near x = 0 keeps full relative accuracy.

    Raises:
        DomainError: x = 0, where the average diverges logarithmically.
    """
    radius = as_radius(r).r
    x = np.asarray(x, dtype=float)
    if np.any(x == 0.0):
        raise DomainError("V_eff diverges logarithmically at x=0")
    rho2 = x * x + 4.0 * radius * radius
    value = 2.0 * elliptic_k_complement(x * x / rho2) / (np.pi * np.sqrt(rho2))
    return float(value) if np.ndim(value) == 0 else value


def v_eff_quadrature(x: float, r: RadiusLike, quad: QuadratureSpec) -> FormValue:
    """
    V_eff by adaptive quadrature of its defining transverse average,

        (1/2πr) ∫_{−πr}^{πr} v_exact(x, y) dy = (2/π) ∫_0^{π/2} du / √(x² + 4r² sin²u).
    """
    radius = as_radius(r).r
    if x == 0.0:
        raise DomainError("V_eff diverges logarithmically at x=0")
    x2 = x * x
    r2 = 4.0 * radius * radius

    def integrand(u):
        s = math.sin(u)
        return 1.0 / math.sqrt(x2 + r2 * s * s)

    # integrand is peaked on the scale |x| / 2r around u = 0
    peak = min(abs(x) / (2.0 * radius), 0.5)
    value, error = integrate(integrand, 0.0, 0.5 * math.pi, quad, points=[peak])
    return FormValue(2.0 * value / math.pi, 2.0 * error / math.pi)


def transverse_mode_energy(n: int, r: RadiusLike) -> float:
    """
    Kinetic energy n²/r² of the n-th circumferential mode.

    Only the n = 0 mode enters the one-dimensional models; this helper exists
    for documentation and validation of the gap to excited channels.
    """
    return n * n / as_radius(r).r ** 2


# ---------------------------------------------------------------------------
# Quadratic forms
# ---------------------------------------------------------------------------

def c0_form(f: FormFunction, quad: QuadratureSpec) -> FormValue:
    """
    C_0(f, f) = −∫_0^∞ ln(x) (|f|²)'(x) dx + ∫_{−∞}^0 ln(−x) (|f|²)'(x) dx.

    Both halves are folded onto t > 0. The ln t singularity on [0, scale]
    is taken as an 'alg-loga' quadrature weight.
    """
    kernel = _log_kernel(f)
    head, head_err = integrate(kernel, 0.0, f.scale, quad, weight="alg-loga", wvar=(0.0, 0.0))
    tail, tail_err = integrate(lambda t: math.log(t) * kernel(t), f.scale, np.inf, quad)
    return FormValue(head + tail, head_err + tail_err)


def c0_form_split(f: FormFunction, epsilon: float, quad: QuadratureSpec) -> FormValue:
    """
    The equivalent ε-split representation of C_0(f, f):

        ∫_{−ε}^0 ln(−x) (|f|²)' − ∫_0^ε ln(x) (|f|²)'
        + ln ε (|f(ε)|² + |f(−ε)|²) + ∫_{|x|>ε} |f(x)|² / |x| dx.

    Identical to `c0_form` for every ε > 0.
    """
    if not epsilon > 0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    kernel = _log_kernel(f)
    density = _symmetrised(f)
    inner, inner_err = integrate(kernel, 0.0, epsilon, quad, weight="alg-loga", wvar=(0.0, 0.0))
    boundary = math.log(epsilon) * density(epsilon)
    split = max(epsilon, f.scale)
    near = near_err = 0.0
    if split > epsilon:
        near, near_err = integrate(lambda t: density(t) / t, epsilon, split, quad)
    far, far_err = integrate(lambda t: density(t) / t, split, np.inf, quad)
    return FormValue(inner + boundary + near + far, inner_err + near_err + far_err)


def _log_mapped_form(
    kernel: Callable[[float], float],
    f: FormFunction,
    transition: float,
    quad: QuadratureSpec,
) -> FormValue:
    """
    ∫_0^∞ kernel(t) (|f(t)|² + |f(−t)|²) dt for kernels with at most a log
    singularity at t = 0.

    On (0, scale) the substitution t = e^{−s} turns the singular end into an
    exponentially decaying tail, split once more at the kernel's own
    transition length.
    """
    density = _symmetrised(f)
    x0 = f.scale
    s_lo = -math.log(x0)
    s_transition = -math.log(transition)
    s_hi = max(s_lo, s_transition) + quad.tail_length

    def mapped(s):
        t = math.exp(-s)
        return kernel(t) * density(t) * t

    value = error = 0.0
    if s_transition > s_lo:
        piece, piece_err = integrate(mapped, s_lo, s_transition, quad)
        value += piece
        error += piece_err
    piece, piece_err = integrate(mapped, max(s_lo, s_transition), s_hi, quad)
    value += piece
    error += piece_err
    piece, piece_err = integrate(lambda t: kernel(t) * density(t), x0, np.inf, quad)
    return FormValue(value + piece, error + piece_err)


def veff_form(f: FormFunction, r: RadiusLike, quad: QuadratureSpec) -> FormValue:
    """⟨f, V_eff f⟩ = ∫ V_eff(x) |f(x)|² dx."""
    radius = as_radius(r)
    return _log_mapped_form(lambda t: v_eff(t, radius), f, radius.r, quad)


def yr_form(f: FormFunction, r: RadiusLike, quad: QuadratureSpec) -> FormValue:
    """⟨f, Y_r f⟩ with the regularised Coulomb kernel Y_r(x) = 1/√(x² + 4r²)."""
    radius = as_radius(r).r
    r2 = 4.0 * radius * radius
    return _log_mapped_form(lambda t: 1.0 / math.sqrt(t * t + r2), f, radius, quad)


def _warn_outside_regime(r, operation: str) -> None:
    if not r.in_validity_regime:
        logger.warning(f"{operation}: r={r.r:g} > 1 lies outside the small-radius regime")


def vc_form(f: FormFunction, r: RadiusLike, quad: QuadratureSpec) -> FormValue:
    """⟨f, V_C f⟩ = −2 ln(r/2) |f(0)|² + C_0(f, f)."""
    radius = as_radius(r)
    _warn_outside_regime(radius, "vc_form")
    c0 = c0_form(f, quad)
    contact = -2.0 * math.log(radius.r / 2.0) * f.density(0.0)
    return FormValue(contact + c0.value, c0.quadrature_error)


def form_residual(f: FormFunction, r: RadiusLike, quad: QuadratureSpec) -> float:
    """veff_form − vc_form; vanishes as r → 0."""
    radius = as_radius(r)
    residual = veff_form(f, radius, quad).value - vc_form(f, radius, quad).value
    logger.debug(f"form_residual(r={radius.r:g}) = {residual:.6e}")
    return residual

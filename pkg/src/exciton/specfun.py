"""
Special functions used by the analytic Coulomb model.

Digamma, associated Laguerre polynomials, the Kummer function U(a, 2, z),
the Whittaker function W_{α,1/2}(z) and the complete elliptic integral K(m).
Every public evaluator returns a SpecialValue carrying an absolute error
estimate so that callers can keep their own tolerances above it.
"""
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple, Union

import numpy as np
from scipy.integrate import quad, solve_ivp

from src.core.exceptions import AccuracyError, DomainError
from src.core.logging_config import logger
from src.exciton.models import EULER_GAMMA, SpecialValue

ArrayLike = Union[float, np.ndarray]

_EPS = np.finfo(float).eps

# Asymptotic digamma coefficients B_2k / (2k) for k = 1..7
_DIGAMMA_ASYMPTOTIC = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)
_DIGAMMA_THRESHOLD = 8.0

# Whittaker ODE integration
WHITTAKER_RTOL = 1e-12
WHITTAKER_Z_FLOOR = 1e-9
_WHITTAKER_MIN_ZMAX = 40.0
_WHITTAKER_MARGIN = 30.0
_SERIES_MAX_TERMS = 60

_AGM_MAX_ITER = 40


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def _is_nonnegative_integer(x: float) -> bool:
    return x >= 0 and x == math.floor(x)


# ---------------------------------------------------------------------------
# Digamma
# ---------------------------------------------------------------------------

def digamma(x: float) -> SpecialValue:
    """
    Ψ(x) = Γ'(x)/Γ(x).

    Upward recurrence Ψ(x+1) = Ψ(x) + 1/x lifts the argument to x >= 8, where
    the Bernoulli asymptotic series truncated at B_14 is used. Negative
    arguments go through the reflection formula.

    Raises:
        DomainError: at the poles x = 0, −1, −2, ...
    """
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"digamma argument must be finite, got {x}")
    if _is_nonpositive_integer(x):
        raise DomainError(f"digamma has a pole at x={x:g}")

    if x < 0:
        # Ψ(x) = Ψ(1−x) − π cot(πx); cot reduced to the fractional part
        frac = x - math.floor(x)
        cot_term = math.pi / math.tan(math.pi * frac)
        reflected = _digamma_positive(1.0 - x)
        value = reflected[0] - cot_term
        error = reflected[1] + _EPS * abs(cot_term) * (1.0 + abs(x))
        return SpecialValue(value, error)

    value, error = _digamma_positive(x)
    return SpecialValue(value, error)


def _digamma_positive(x: float) -> Tuple[float, float]:
    shift = 0.0
    while x < _DIGAMMA_THRESHOLD:
        shift -= 1.0 / x
        x += 1.0

    inv2 = 1.0 / (x * x)
    series = 0.0
    power = inv2
    for coefficient in _DIGAMMA_ASYMPTOTIC:
        series += coefficient * power
        power *= inv2
    value = math.log(x) - 0.5 / x - series + shift
    # first omitted term is B_16/16 x^-16 ≈ 0.44 x^-16
    truncation = 0.45 * power
    return value, truncation + 4 * _EPS * (abs(value) + abs(shift))


# ---------------------------------------------------------------------------
# Laguerre polynomials
# ---------------------------------------------------------------------------

def laguerre(n: int, order: float, z: ArrayLike) -> ArrayLike:
    """
    Associated Laguerre polynomial L^{order}_n(z) by the three-term recurrence

        (k+1) L_{k+1} = (2k + 1 + order − z) L_k − (k + order) L_{k−1}.

    Works elementwise on numpy arrays.
    """
    if n < 0:
        raise DomainError(f"Laguerre degree must be >= 0, got {n}")
    z = np.asarray(z, dtype=float) if not np.isscalar(z) else float(z)
    previous = np.ones_like(z) if isinstance(z, np.ndarray) else 1.0
    if n == 0:
        return previous
    current = 1.0 + order - z
    for k in range(1, n):
        previous, current = current, ((2 * k + 1 + order - z) * current - (k + order) * previous) / (k + 1)
    return current


def laguerre1(n: int, z: ArrayLike) -> ArrayLike:
    """L¹_n(z), the Laguerre family appearing in the odd eigenfunctions."""
    return laguerre(n, 1.0, z)


# ---------------------------------------------------------------------------
# Whittaker W_{α,1/2}
# ---------------------------------------------------------------------------

def _asymptotic_seed(alpha: float, z: float) -> Tuple[float, float, float]:
    """
    W and W' from e^{−z/2} z^α Σ (1−α)_k (−α)_k / k! (−1/z)^k.

    Returns (w, dw, relative truncation error). The series terminates for
    non-negative integer α.
    """
    terminating = _is_nonnegative_integer(alpha)
    total = 1.0
    derivative_sum = 0.0
    term = 1.0
    smallest = 1.0
    converged = False
    for k in range(1, _SERIES_MAX_TERMS + 1):
        ratio = (k - alpha) * (k - 1 - alpha) / k
        new_term = -term * ratio / z
        if new_term == 0.0:
            converged = True
            break
        if not terminating and k > 1 and abs(new_term) > abs(term):
            break
        term = new_term
        total += term
        derivative_sum += -k * term / z
        smallest = abs(term)
        if not terminating and smallest < _EPS * abs(total):
            converged = True
            break

    relative_error = 0.0 if converged else smallest / max(abs(total), _EPS)
    prefactor = math.exp(-0.5 * z) * z**alpha
    w = prefactor * total
    dw = prefactor * ((alpha / z - 0.5) * total + derivative_sum)
    return w, dw, relative_error


@dataclass(frozen=True)
class _WhittakerPoint:
    w: float
    dw: float


class _WhittakerProfile:
    """
    W_{α,1/2} on (0, z_max] from one backward DOP853 run.

    The state carries [w, w', s] with s(z) = ∫_z^{z_max} w² so the square
    integral needed for normalization comes out of the same integration.
    """

    def __init__(self, alpha: float, z_max: float):
        self.alpha = alpha
        self.z_max = z_max

        w_seed, dw_seed, seed_error = _asymptotic_seed(alpha, z_max)
        if seed_error > 1e-13:
            raise AccuracyError(
                f"Asymptotic seed for W_{{{alpha},1/2}} did not converge at z_max={z_max} "
                f"(relative truncation {seed_error:.2e})"
            )
        scale = max(abs(w_seed), 1e-300)

        def rhs(z, state):
            w, dw, _ = state
            return [dw, (0.25 - alpha / z) * w, -w * w]

        solution = solve_ivp(
            rhs,
            (z_max, WHITTAKER_Z_FLOOR),
            [w_seed, dw_seed, 0.0],
            method="DOP853",
            rtol=WHITTAKER_RTOL,
            atol=[WHITTAKER_RTOL * scale, WHITTAKER_RTOL * scale, WHITTAKER_RTOL * scale * scale],
            dense_output=True,
        )
        if not solution.success:
            raise AccuracyError(f"Whittaker ODE integration failed for alpha={alpha}: {solution.message}")

        self._dense = solution.sol
        self.seed = _WhittakerPoint(w_seed, dw_seed)
        w_floor, _, s_floor = solution.y[:, -1]
        # ∫_{z_max}^∞ W² ≈ W(z_max)² (1 + 2α/z_max); ∫_0^{z_floor} W² ≈ W(0)² z_floor
        tail = w_seed * w_seed * (1.0 + 2.0 * alpha / z_max)
        head = w_floor * w_floor * WHITTAKER_Z_FLOOR
        self.square_integral = s_floor + tail + head
        self.n_steps = solution.t.size
        logger.debug(
            f"Whittaker profile alpha={alpha:.12g} z_max={z_max:g}: "
            f"{self.n_steps} steps, ∫W²={self.square_integral:.12g}"
        )

    def evaluate(self, z: float) -> _WhittakerPoint:
        if z >= self.z_max:
            w, dw, _ = _asymptotic_seed(self.alpha, z)
            return _WhittakerPoint(w, dw)
        if z < WHITTAKER_Z_FLOOR:
            return _small_z_whittaker(self.alpha, z)
        w, dw, _ = self._dense(z)
        return _WhittakerPoint(float(w), float(dw))


def _small_z_whittaker(alpha: float, z: float) -> _WhittakerPoint:
    """
    Leading terms of W_{α,1/2} at the origin (non-integer α):

        W ≈ (1/Γ(1−α)) [1 − z/2 − α z (ln z + Ψ(1−α) + 2γ − 1)].
    """
    a = 1.0 - alpha
    inv_gamma = 1.0 / math.gamma(a)
    log_part = math.log(z) + digamma(a).value + 2.0 * EULER_GAMMA
    w = inv_gamma * (1.0 - 0.5 * z - alpha * z * (log_part - 1.0))
    dw = inv_gamma * (-0.5 - alpha * log_part)
    return _WhittakerPoint(w, dw)


def _profile_zmax(z: float) -> float:
    return 10.0 * math.ceil(max(_WHITTAKER_MIN_ZMAX, z + _WHITTAKER_MARGIN) / 10.0)


@lru_cache(maxsize=256)
def _profile(alpha: float, z_max: float) -> _WhittakerProfile:
    return _WhittakerProfile(alpha, z_max)


def _check_whittaker_args(alpha: float, z: float) -> None:
    if not (math.isfinite(z) and z > 0):
        raise DomainError(f"Whittaker W requires z > 0, got z={z}")
    if not math.isfinite(alpha):
        raise DomainError(f"Whittaker W requires finite alpha, got {alpha}")


def whittaker_point(alpha: float, z: float) -> Tuple[float, float]:
    """Return (W_{α,1/2}(z), dW/dz) from the same evaluation path as `whittaker_w`."""
    alpha, z = float(alpha), float(z)
    _check_whittaker_args(alpha, z)
    if _is_nonnegative_integer(alpha):
        w, dw, _ = _asymptotic_seed(alpha, z)
        return w, dw
    point = _profile(alpha, _profile_zmax(z)).evaluate(z)
    return point.w, point.dw


def whittaker_w(alpha: float, z: float) -> SpecialValue:
    """
    W_{α,1/2}(z), the solution of w'' = (1/4 − α/z) w that decays at +∞.

    Computed by integrating the ODE backward from z_max = max(40, z + 30)
    where it is seeded with the asymptotic expansion. For non-negative
    integer α the expansion terminates and is evaluated directly.

    Raises:
        DomainError: z <= 0.
        AccuracyError: the asymptotic seed did not converge.
    """
    w, _ = whittaker_point(alpha, z)
    if _is_nonnegative_integer(float(alpha)):
        return SpecialValue(w, 4 * _EPS * abs(w))
    return SpecialValue(w, 10 * WHITTAKER_RTOL * abs(w) + 1e-15)


def whittaker_square_integral(alpha: float) -> SpecialValue:
    """∫_0^∞ W_{α,1/2}(z)² dz for non-integer α > 0."""
    alpha = float(alpha)
    if not (math.isfinite(alpha) and alpha > 0) or _is_nonnegative_integer(alpha):
        raise DomainError(f"Square integral needs non-integer alpha > 0, got {alpha}")
    profile = _profile(alpha, _WHITTAKER_MIN_ZMAX)
    value = profile.square_integral
    return SpecialValue(value, 10 * WHITTAKER_RTOL * value)


# ---------------------------------------------------------------------------
# Kummer U(a, 2, z)
# ---------------------------------------------------------------------------

def kummer_u_b2(a: float, z: float, limit: int = 200) -> SpecialValue:
    """
    U(a, 2, z) for real a and z > 0.

    a > 0: integral representation
        U(a,2,z) = Γ(a)⁻¹ ∫_0^∞ e^{−zt} t^{a−1} (1+t)^{1−a} dt,
    with the t^{a−1} endpoint singularity on [0, 1] handled by an algebraic
    weight. a <= 0: W_{1−a,1/2}(z) / (z e^{−z/2}).
    """
    a, z = float(a), float(z)
    if not (math.isfinite(z) and z > 0):
        raise DomainError(f"Kummer U requires z > 0, got z={z}")
    if a == 0.0:
        return SpecialValue(1.0, 0.0)

    if a <= 0:
        whittaker = whittaker_w(1.0 - a, z)
        scale = z * math.exp(-0.5 * z)
        return SpecialValue(whittaker.value / scale, whittaker.est_abs_error / scale)

    def near(t):
        return math.exp(-z * t) * (1.0 + t) ** (1.0 - a)

    def far(t):
        return math.exp(-z * t) * t ** (a - 1.0) * (1.0 + t) ** (1.0 - a)

    head, head_err = quad(
        near, 0.0, 1.0, weight="alg", wvar=(a - 1.0, 0.0), limit=limit, epsabs=1e-14, epsrel=1e-13
    )
    tail, tail_err = quad(far, 1.0, np.inf, limit=limit, epsabs=1e-14, epsrel=1e-13)
    gamma_a = math.gamma(a)
    value = (head + tail) / gamma_a
    error = (head_err + tail_err) / gamma_a
    if error > 1e-8 * max(abs(value), 1.0):
        raise AccuracyError(f"Kummer U({a}, 2, {z}) quadrature error {error:.2e} too large")
    return SpecialValue(value, error)


# ---------------------------------------------------------------------------
# Complete elliptic integral of the first kind
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EllipticModulus:
    """
    Parameter m of K(m) = ∫_0^{π/2} dθ / √(1 − m sin²θ).

    Near m = 1 the complement 1 − m carries all the information; build with
    `from_complement` when it is known more accurately than m itself.
    """
    m: float
    complement: Optional[float] = None

    def __post_init__(self):
        if not math.isfinite(self.m) or self.m < 0:
            raise DomainError(f"Elliptic parameter must satisfy 0 <= m < 1, got m={self.m}")
        if self.complement is None and self.m >= 1:
            raise DomainError(f"K(m) diverges logarithmically at m={self.m}")
        if not (math.isfinite(self.m1) and 0 < self.m1 <= 1):
            raise DomainError(f"K(m) diverges logarithmically at 1 - m = {self.m1}")

    @property
    def m1(self) -> float:
        return self.complement if self.complement is not None else 1.0 - self.m

    @classmethod
    def from_complement(cls, m1: float) -> "EllipticModulus":
        return cls(m=1.0 - m1, complement=m1)


def elliptic_k_complement(m1: ArrayLike) -> ArrayLike:
    """
    K as a function of the complementary parameter m1 = 1 − m, vectorised.

    K = π / (2 AGM(1, √m1)).
    """
    b = np.sqrt(np.asarray(m1, dtype=float))
    a = np.ones_like(b)
    for _ in range(_AGM_MAX_ITER):
        a, b = 0.5 * (a + b), np.sqrt(a * b)
        if np.all(np.abs(a - b) <= 2 * _EPS * a):
            break
    else:
        raise AccuracyError("AGM iteration did not converge")
    result = 0.5 * np.pi / a
    return float(result) if result.ndim == 0 else result


def elliptic_k(m: Union[EllipticModulus, float]) -> SpecialValue:
    """K(m) through the arithmetic–geometric mean."""
    if not isinstance(m, EllipticModulus):
        m = EllipticModulus(float(m))
    value = elliptic_k_complement(m.m1)
    return SpecialValue(value, 8 * _EPS * value)

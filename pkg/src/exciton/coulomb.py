"""
Analytic one-dimensional Coulomb model of the cylinder exciton.

Bound states are parametrised by α > 0 with E = −1/α² (effective Rydbergs)
and live in the scaled coordinate z = 2x/α. Odd states have integer α and
an r-independent energy; even states solve the digamma condition

    Ψ(1−α) + 2γ + 1/(2α) − ln α + ln r = 0,

which has exactly one root in every interval (n−1, n).
"""
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from src.core.config import settings
from src.core.exceptions import AccuracyError, DomainError, RootNotFoundError
from src.core.logging_config import logger
from src.exciton.models import (
    EULER_GAMMA,
    BoundaryResidual,
    EigenSolution,
    Parity,
    RadiusLike,
    StateLabel,
    as_radius,
)
from src.exciton.specfun import digamma, laguerre, whittaker_point, whittaker_square_integral

# Bracket offsets from the digamma poles, tried in order
BRACKET_OFFSETS = (1e-9, 1e-12, 1e-15)
GROUND_STATE_LOWER = 1e-12
SECANT_POLISH_STEPS = 3
SCAN_OFFSET = 1e-6
FD_STEP = 1e-4
# worst-case bounds accepted from the special functions at a root
CONDITION_ACCURACY = 1e-10
NORM_RTOL = 1e-8


def even_condition(alpha: float, r: RadiusLike) -> float:
    """
    Left-hand side Ψ(1−α) + 2γ + 1/(2α) − ln α + ln r of the even-state condition.

    Strictly decreasing on every interval between consecutive integers,
    from +∞ just above an integer to −∞ just below the next one.

    Raises:
        DomainError: alpha <= 0 or alpha a positive integer (digamma pole).
    """
    radius = as_radius(r).r
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    psi = digamma(1.0 - alpha).value
    return psi + 2.0 * EULER_GAMMA + 0.5 / alpha - math.log(alpha) + math.log(radius)


def _interval(n: int, offset: float) -> Tuple[float, float]:
    lower = GROUND_STATE_LOWER if n == 1 else n - 1 + offset
    return lower, n - offset


def even_condition_scan(
    n: int, r: RadiusLike, points: int = 1000
) -> List[Tuple[float, float]]:
    """Sample even_condition on a uniform grid over (n−1, n), clear of the poles."""
    if n < 1:
        raise DomainError(f"Principal index must be >= 1, got {n}")
    grid = np.linspace(n - 1 + SCAN_OFFSET, n - SCAN_OFFSET, points)
    return [(float(a), even_condition(float(a), r)) for a in grid]


def count_sign_changes(scan: Sequence[Tuple[float, float]]) -> int:
    values = np.array([value for _, value in scan])
    signs = np.sign(values)
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def _polish(func, root: float, lower: float, upper: float) -> float:
    """A few secant steps from the bracketed root; a step is kept only if it lowers |f|."""
    best, best_value = root, abs(func(root))
    x0, f0 = root, func(root)
    x1 = root + 1e-10 * max(1.0, root)
    if not lower < x1 < upper:
        return best
    f1 = func(x1)
    for _ in range(SECANT_POLISH_STEPS):
        if f1 == f0:
            break
        x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        if not lower < x2 < upper:
            break
        f2 = func(x2)
        if abs(f2) < best_value:
            best, best_value = x2, abs(f2)
        x0, f0, x1, f1 = x1, f1, x2, f2
    return best


def _normalisation(alpha: float) -> float:
    """
    C_α such that ∫_ℝ (C_α W_{α,1/2}(|z|))² dz = 1.

    Raises:
        AccuracyError: the square integral is not known to NORM_RTOL.
    """
    square = whittaker_square_integral(alpha)
    # C_α ∝ S^(-1/2): relative error halves
    rel_error = 0.5 * square.est_abs_error / square.value
    if rel_error > NORM_RTOL:
        raise AccuracyError(
            f"Normalisation at alpha={alpha} only known to {rel_error:.1e} (need {NORM_RTOL:.0e})"
        )
    return 1.0 / math.sqrt(2.0 * square.value)


def condition_error_bound(alpha: float) -> float:
    """Worst-case absolute error of even_condition at alpha, from the digamma estimate."""
    return digamma(1.0 - alpha).est_abs_error + 4.0 * np.finfo(float).eps * (
        abs(math.log(alpha)) + 0.5 / alpha + 2.0 * EULER_GAMMA
    )


def even_alpha(n: int, r: RadiusLike, tol: Optional[float] = None) -> EigenSolution:
    """
    The even state `n s`: the unique root of even_condition in (n−1, n).

    Bracketed Brent iteration to |Δα| < tol followed by a short secant
    polish. The bracket starts 1e-9 away from the poles and is widened
    toward them if no sign change is seen.

    Raises:
        RootNotFoundError: no sign change in any bracket; carries a sign scan.
    """
    radius = as_radius(r)
    label = StateLabel(n, Parity.EVEN)
    tol = settings.root_tol if tol is None else tol
    if not tol > 0:
        raise DomainError(f"Root tolerance must be positive, got {tol}")
    if not radius.in_validity_regime:
        logger.warning(f"even_alpha: r={radius.r:g} > 1, outside the small-radius regime")

    def condition(alpha):
        return even_condition(alpha, radius)

    for offset in BRACKET_OFFSETS:
        lower, upper = _interval(n, offset)
        f_lower, f_upper = condition(lower), condition(upper)
        if f_lower > 0 > f_upper:
            break
        logger.debug(
            f"No sign change for {label} on ({lower}, {upper}): "
            f"f={f_lower:.3e}, {f_upper:.3e}; widening bracket"
        )
    else:
        raise RootNotFoundError(
            f"even_condition has no sign change for {label} at r={radius.r:g}",
            scan=even_condition_scan(n, radius),
        )

    root, result = brentq(condition, lower, upper, xtol=tol, maxiter=200, full_output=True)
    logger.debug(
        f"{label} r={radius.r:g}: brentq converged={result.converged} "
        f"after {result.iterations} iterations, alpha={root:.15g}"
    )
    alpha = _polish(condition, root, lower, upper)
    bound = condition_error_bound(alpha)
    if bound > CONDITION_ACCURACY:
        raise AccuracyError(
            f"even_condition for {label} at r={radius.r:g} is only known to {bound:.1e}"
        )
    logger.debug(f"{label} r={radius.r:g}: condition error bound {bound:.1e}")
    return EigenSolution(
        label=label,
        alpha=alpha,
        energy=-1.0 / alpha**2,
        norm_const=_normalisation(alpha),
        r=radius,
    )


def odd_solution(n: int, r: RadiusLike) -> EigenSolution:
    """
    The odd state `n p`: α = n − 1 and E = −1/(n−1)², whatever the radius.

    Raises:
        DomainError: n < 2 (there is no 1p state).
    """
    if n < 2:
        raise DomainError(f"Odd states start at n=2, got n={n}")
    n_index = n - 1
    alpha = float(n_index)
    return EigenSolution(
        label=StateLabel(n, Parity.ODD),
        alpha=alpha,
        energy=-1.0 / alpha**2,
        norm_const=1.0 / (2.0 * n_index),
        r=as_radius(r),
    )


def solve_state(label: StateLabel, r: RadiusLike, tol: Optional[float] = None) -> EigenSolution:
    if label.is_even:
        return even_alpha(label.n, r, tol)
    return odd_solution(label.n, r)


def state_ladder(count: int) -> List[StateLabel]:
    """The `count` lowest labels in energy order: 1s, 2p, 2s, 3p, 3s, ..."""
    labels = [StateLabel(1, Parity.EVEN)]
    n = 2
    while len(labels) < count:
        labels.append(StateLabel(n, Parity.ODD))
        labels.append(StateLabel(n, Parity.EVEN))
        n += 1
    return labels[:count]


def spectrum(r: RadiusLike, count: int, tol: Optional[float] = None) -> List[EigenSolution]:
    """The `count` lowest bound states sorted by energy."""
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    radius = as_radius(r)
    solutions = [solve_state(label, radius, tol) for label in state_ladder(count)]
    return sorted(solutions, key=lambda sol: sol.energy)


# ---------------------------------------------------------------------------
# Eigenfunctions and diagnostics
# ---------------------------------------------------------------------------

def _even_at_origin(sol: EigenSolution) -> float:
    return sol.norm_const / math.gamma(1.0 - sol.alpha)


def eigenfunction(sol: EigenSolution, z: float) -> float:
    """
    Normalised eigenfunction in the scaled coordinate z = 2x/α.

    odd:  (1/2N) e^{−|z|/2} z L¹_{N−1}(|z|),  N = α
    even: C_α W_{α,1/2}(|z|)
    """
    z = float(z)
    if sol.label.is_even:
        if z == 0.0:
            return _even_at_origin(sol)
        w, _ = whittaker_point(sol.alpha, abs(z))
        return sol.norm_const * w
    n_index = int(round(sol.alpha))
    return sol.norm_const * math.exp(-0.5 * abs(z)) * z * float(laguerre(n_index - 1, 1.0, abs(z)))


def eigenfunction_derivative(sol: EigenSolution, z: float) -> float:
    """
    dψ/dz of `eigenfunction`.

    Odd states use d/dz L¹_k = −L²_{k−1}; even states take W' from the
    integrated Whittaker ODE state. Even states have a logarithmic
    derivative singularity at z = 0.
    """
    z = float(z)
    if sol.label.is_even:
        if z == 0.0:
            raise DomainError("Even eigenfunction derivative diverges at z=0")
        _, dw = whittaker_point(sol.alpha, abs(z))
        return math.copysign(1.0, z) * sol.norm_const * dw
    n_index = int(round(sol.alpha))
    t = abs(z)
    poly = float(laguerre(n_index - 1, 1.0, t))
    poly_derivative = -float(laguerre(n_index - 2, 2.0, t)) if n_index >= 2 else 0.0
    return sol.norm_const * math.exp(-0.5 * t) * ((1.0 - 0.5 * t) * poly + t * poly_derivative)


def ode_residual(
    sol: EigenSolution,
    x_samples: Sequence[float],
    h: float = FD_STEP,
    scaled: bool = False,
) -> float:
    """
    max |−ψ'' − 2ψ/|x| − Eψ| / max |ψ| over the samples, in the unscaled
    coordinate x = (α/2) z, with ψ'' by central differences of step h.

    With `scaled=True` the differences are taken in z with step 2h/α and
    mapped back through d²/dx² = (4/α²) d²/dz².
    """
    samples = [float(x) for x in x_samples]
    if any(x == 0.0 or abs(x) <= h for x in samples):
        raise DomainError("ode_residual samples must stay away from x=0")
    to_z = 2.0 / sol.alpha

    def psi(x):
        return eigenfunction(sol, to_z * x)

    worst = 0.0
    peak = 0.0
    for x in samples:
        if scaled:
            z, hz = to_z * x, to_z * h
            centre = eigenfunction(sol, z)
            second = (eigenfunction(sol, z + hz) - 2.0 * centre + eigenfunction(sol, z - hz)) / hz**2
            second *= to_z**2
        else:
            centre = psi(x)
            second = (psi(x + h) - 2.0 * centre + psi(x - h)) / h**2
        residual = abs(-second - 2.0 * centre / abs(x) - sol.energy * centre)
        worst = max(worst, residual)
        peak = max(peak, abs(centre))
    if peak == 0.0:
        raise DomainError("Eigenfunction vanishes at every sample")
    return worst / peak


def boundary_residual(sol: EigenSolution, r: RadiusLike, epsilon: float) -> BoundaryResidual:
    """
    [ψ'(−ε) − ψ'(ε)]/2 + α (ln r − ln(αε)) ψ(0) in the scaled coordinate.

    Tends to zero with ε for a true even eigenstate; exactly zero for odd
    states by antisymmetry.
    """
    if not epsilon > 0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    radius = as_radius(r).r
    jump = 0.5 * (eigenfunction_derivative(sol, -epsilon) - eigenfunction_derivative(sol, epsilon))
    origin = eigenfunction(sol, 0.0)
    value = jump + sol.alpha * (math.log(radius) - math.log(sol.alpha * epsilon)) * origin
    return BoundaryResidual(value=value, epsilon_used=epsilon)


def ground_asymptote(r: RadiusLike) -> float:
    """Small-radius asymptote −4 (ln r)² of the ground-state energy."""
    radius = as_radius(r).r
    if radius >= 1.0:
        raise DomainError(f"ground_asymptote needs 0 < r < 1, got r={radius}")
    return -4.0 * math.log(radius) ** 2

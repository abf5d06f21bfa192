"""Thin wrappers around scipy quadrature that map failures onto AccuracyError."""
from functools import lru_cache
from typing import Callable, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import quad

from src.core.exceptions import AccuracyError
from src.core.logging_config import logger
from src.exciton.models import QuadratureSpec

# scipy may flag round-off while still meeting a slightly looser target
_ACCEPTANCE_FACTOR = 1e4


def integrate(
    func: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec,
    **kwargs,
) -> Tuple[float, float]:
    """
    Adaptive QUADPACK integral of `func` over [a, b].

    Extra keyword arguments (weight, wvar, points) are forwarded to
    scipy.integrate.quad.

    Returns:
        (value, absolute error estimate)

    Raises:
        AccuracyError: QUADPACK reported a failure and the error estimate is
        above the acceptance level of `spec`.
    """
    result = quad(
        func,
        a,
        b,
        limit=spec.limit,
        epsabs=spec.epsabs,
        epsrel=spec.epsrel,
        full_output=1,
        **kwargs,
    )
    value, error = float(result[0]), float(result[1])
    if not np.isfinite(value):
        raise AccuracyError(f"Quadrature on [{a}, {b}] returned a non-finite value")
    if len(result) > 3:
        tolerance = _ACCEPTANCE_FACTOR * max(spec.epsabs, spec.epsrel * abs(value))
        if error > tolerance:
            raise AccuracyError(
                f"Quadrature on [{a}, {b}] did not converge: {result[3]} "
                f"(error estimate {error:.2e})"
            )
        logger.debug(f"Quadrature on [{a}, {b}] accepted with warning: {result[3]}")
    return value, error


@lru_cache(maxsize=32)
def gauss_legendre(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss–Legendre nodes and weights mapped to [0, 1]."""
    nodes, weights = leggauss(n)
    return 0.5 * (nodes + 1.0), 0.5 * weights

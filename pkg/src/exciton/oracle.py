"""
Finite-difference eigensolver for H_eff = −d²/dx² − 2 V_eff(x).

Three-point Laplacian on a midpoint grid over [−L, L] with Dirichlet
walls. The grid never touches x = 0, so the logarithmic singularity of
V_eff needs no regularisation. Eigenvalues come from Sturm-sequence
bisection (LAPACK stebz), which keeps the oracle free of tuning knobs.
"""
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Union

import numpy as np
from scipy.linalg import eigh_tridiagonal

from src.core.config import settings
from src.core.exceptions import ConfigurationError, DomainError
from src.core.logging_config import logger
from src.exciton.models import Parity, RadiusLike, as_radius
from src.exciton.potential import v_eff

PotentialHook = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class GridSpec:
    """Midpoint grid x_j = −L + (j + 1/2) h, h = 2L / n_points."""
    half_length: float
    n_points: int

    def __post_init__(self):
        if not (math.isfinite(self.half_length) and self.half_length > 0):
            raise ConfigurationError(f"half_length must be positive, got {self.half_length}")
        if self.n_points % 2:
            raise ConfigurationError(
                f"n_points={self.n_points} is odd: the midpoint grid would put a node at x=0"
            )
        if self.n_points < 8:
            raise ConfigurationError(f"n_points must be at least 8, got {self.n_points}")

    @property
    def h(self) -> float:
        return 2.0 * self.half_length / self.n_points

    @property
    def points(self) -> np.ndarray:
        return -self.half_length + (np.arange(self.n_points) + 0.5) * self.h

    @classmethod
    def from_settings(cls) -> "GridSpec":
        return cls(settings.oracle_half_length, settings.oracle_points)


@dataclass(frozen=True)
class TridiagonalOperator:
    """Symmetric tridiagonal matrix with a constant off-diagonal."""
    diagonal: np.ndarray
    off_diagonal: float
    grid: Optional[GridSpec] = field(default=None, compare=False)

    def __post_init__(self):
        if self.diagonal.ndim != 1 or self.diagonal.size < 1:
            raise ConfigurationError("Tridiagonal operator needs a non-empty 1D diagonal")

    @property
    def dimension(self) -> int:
        return int(self.diagonal.size)

    def off_diagonal_array(self, size: Optional[int] = None) -> np.ndarray:
        size = self.dimension if size is None else size
        return np.full(size - 1, self.off_diagonal)


def build_hamiltonian(
    r: RadiusLike,
    grid: GridSpec,
    potential: Optional[PotentialHook] = None,
) -> TridiagonalOperator:
    """
    Discretise H_eff on `grid`: diagonal 2/h² − 2V(x_j), off-diagonal −1/h².

    `potential` replaces V_eff (for example with zero for the free box).
    """
    radius = as_radius(r)
    x = grid.points
    values = v_eff(x, radius) if potential is None else np.asarray(potential(x), dtype=float)
    inv_h2 = 1.0 / grid.h**2
    diagonal = 2.0 * inv_h2 - 2.0 * values
    logger.debug(f"Built H_eff: r={radius.r:g}, L={grid.half_length:g}, n={grid.n_points}")
    return TridiagonalOperator(diagonal=diagonal, off_diagonal=-inv_h2, grid=grid)


def sturm_count(op: TridiagonalOperator, energy: float) -> int:
    """Number of eigenvalues strictly below `energy` (negative pivots of the LDLᵀ of op − E)."""
    e2 = op.off_diagonal * op.off_diagonal
    tiny = np.finfo(float).tiny
    count = 0
    pivot = 1.0
    for index, d in enumerate(op.diagonal):
        pivot = d - energy - (e2 / pivot if index else 0.0)
        if pivot == 0.0:
            pivot = -tiny
        if pivot < 0.0:
            count += 1
    return count


def _lowest(diagonal: np.ndarray, off_diagonal: float, k: int) -> List[float]:
    if not 1 <= k <= diagonal.size:
        raise DomainError(f"Requested k={k} eigenvalues of a {diagonal.size}-dimensional operator")
    values = eigh_tridiagonal(
        diagonal,
        np.full(diagonal.size - 1, off_diagonal),
        eigvals_only=True,
        select="i",
        select_range=(0, k - 1),
        lapack_driver="stebz",
    )
    return [float(v) for v in np.sort(values)]


def lowest_eigenvalues(op: TridiagonalOperator, k: int) -> List[float]:
    """The k smallest eigenvalues in ascending order."""
    return _lowest(op.diagonal, op.off_diagonal, k)


def _as_parity(parity: Union[Parity, str]) -> Parity:
    if isinstance(parity, Parity):
        return parity
    aliases = {"even": Parity.EVEN, "s": Parity.EVEN, "odd": Parity.ODD, "p": Parity.ODD}
    try:
        return aliases[str(parity).lower()]
    except KeyError:
        raise DomainError(f"Unknown parity '{parity}' (use even/odd)") from None


def parity_eigenvalues(
    op: TridiagonalOperator, parity: Union[Parity, str], k: int
) -> List[float]:
    """
    Lowest k eigenvalues of one parity sector.

    The right half of the grid is kept; the mirror node across x = 0 is
    replaced by ±ψ of the first node, which adds +off_diagonal (even,
    Neumann) or −off_diagonal (odd, Dirichlet) to that diagonal entry.
    """
    sector = _as_parity(parity)
    n = op.dimension
    if n % 2:
        raise ConfigurationError("Parity reduction needs an even-dimensional operator")
    diagonal = op.diagonal
    if not np.allclose(diagonal, diagonal[::-1], rtol=1e-13, atol=0.0):
        raise ConfigurationError("Parity reduction needs a mirror-symmetric diagonal")

    half = diagonal[n // 2 :].copy()
    if sector is Parity.EVEN:
        half[0] += op.off_diagonal
    else:
        half[0] -= op.off_diagonal
    return _lowest(half, op.off_diagonal, k)


def box_spectrum(grid: GridSpec, k: int) -> List[float]:
    """Exact eigenvalues (2/h²)(1 − cos(jπ/(n+1))), j = 1..k, of the free discrete box."""
    if not 1 <= k <= grid.n_points:
        raise DomainError(f"Requested k={k} box levels on a grid of {grid.n_points} points")
    j = np.arange(1, k + 1)
    values = 2.0 / grid.h**2 * (1.0 - np.cos(j * np.pi / (grid.n_points + 1)))
    return [float(v) for v in values]

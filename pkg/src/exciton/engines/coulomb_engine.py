"""Analytic Coulomb-model engine."""
from typing import Dict, List, Optional, Sequence

from src.exciton.coulomb import solve_state
from src.exciton.engines.base_engine import BaseEngine
from src.exciton.engines.constants import ALPHA_PREFIX, COULOMB, SPECTRUM_PREFIX
from src.exciton.models import Radius, StateLabel


class CoulombEngine(BaseEngine):
    """Energies (and optionally α) of the requested states from the digamma condition."""

    def __init__(
        self,
        states: Sequence[StateLabel],
        tol: Optional[float] = None,
        prefix: str = SPECTRUM_PREFIX,
        include_alpha: bool = False,
    ):
        super().__init__(COULOMB)
        self.states = list(states)
        self.tol = tol
        self.prefix = prefix
        self.include_alpha = include_alpha

    @property
    def columns(self) -> List[str]:
        columns = [f"{self.prefix}{label}" for label in self.states]
        if self.include_alpha:
            columns += [f"{ALPHA_PREFIX}{label}" for label in self.states]
        return columns

    def execute(self, r: Radius) -> Dict[str, float]:
        row: Dict[str, float] = {}
        for label in self.states:
            solution = solve_state(label, r, self.tol)
            row[f"{self.prefix}{label}"] = solution.energy
            if self.include_alpha:
                row[f"{ALPHA_PREFIX}{label}"] = solution.alpha
        return row

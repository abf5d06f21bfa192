"""Variational engine: minimised trial energies for 1s and 2p."""
from typing import Dict, List, Sequence

from src.exciton.engines.base_engine import BaseEngine
from src.exciton.engines.constants import VARIATIONAL, VARIATIONAL_PREFIX
from src.exciton.models import QuadratureSpec, Radius, StateLabel
from src.exciton.variational import minimize_state


class VariationalEngine(BaseEngine):
    """Runs the simplex search for every requested trial state."""

    def __init__(
        self,
        states: Sequence[StateLabel],
        quad: QuadratureSpec,
        prefix: str = VARIATIONAL_PREFIX,
    ):
        super().__init__(VARIATIONAL)
        self.states = list(states)
        self.quad = quad
        self.prefix = prefix

    @property
    def columns(self) -> List[str]:
        return [f"{self.prefix}{label}" for label in self.states]

    def execute(self, r: Radius) -> Dict[str, float]:
        return {
            f"{self.prefix}{label}": minimize_state(label, r, self.quad).energy
            for label in self.states
        }

"""Finite-difference oracle engine."""
from typing import Dict, List

from src.exciton.engines.base_engine import BaseEngine
from src.exciton.engines.constants import ORACLE, ORACLE_EVEN_COLUMN, ORACLE_ODD_COLUMN
from src.exciton.models import Parity, Radius
from src.exciton.oracle import GridSpec, build_hamiltonian, parity_eigenvalues


class OracleEngine(BaseEngine):
    """Lowest odd- and even-sector eigenvalues of the discretised H_eff."""

    def __init__(self, grid: GridSpec):
        super().__init__(ORACLE)
        self.grid = grid

    @property
    def columns(self) -> List[str]:
        return [ORACLE_ODD_COLUMN, ORACLE_EVEN_COLUMN]

    def execute(self, r: Radius) -> Dict[str, float]:
        operator = build_hamiltonian(r, self.grid)
        return {
            ORACLE_ODD_COLUMN: parity_eigenvalues(operator, Parity.ODD, 1)[0],
            ORACLE_EVEN_COLUMN: parity_eigenvalues(operator, Parity.EVEN, 1)[0],
        }

"""Base engine class for per-radius sweep computations."""
from abc import ABC, abstractmethod
from typing import Dict, List

from src.core.logging_config import logger
from src.exciton.models import Radius


class BaseEngine(ABC):
    """Base class for all sweep engines."""

    def __init__(self, engine_name: str):
        """
        Initialize the engine.

        Args:
            engine_name: Name of this engine (for logging)
        """
        self.engine_name = engine_name

    @property
    @abstractmethod
    def columns(self) -> List[str]:
        """Output columns produced by `execute`, in emission order."""

    @abstractmethod
    def execute(self, r: Radius) -> Dict[str, float]:
        """
        Execute the engine at one radius.

        Args:
            r: Radius of the current sweep row

        Returns:
            Column name to value mapping for this row
        """

    def __call__(self, r: Radius) -> Dict[str, float]:
        """Make the engine callable from the sweep runner."""
        logger.debug(f"Executing engine: {self.engine_name} at r={r.r:g}")
        result = self.execute(r)
        logger.debug(f"Engine {self.engine_name} completed at r={r.r:g}")
        return result

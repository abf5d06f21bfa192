"""Radius sweeps: run a set of engines over an r grid and merge their rows."""
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Literal, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from src.core.config import settings
from src.core.logging_config import logger
from src.exciton.engines.base_engine import BaseEngine
from src.exciton.engines.constants import ENGINE_NAMES
from src.exciton.models import Radius, StateLabel

Row = Dict[str, float]


class SweepConfig(BaseModel):
    """An r grid plus the states and engines evaluated on it."""

    r_min: float = Field(default_factory=lambda: settings.sweep_r_min, gt=0)
    r_max: float = Field(default_factory=lambda: settings.sweep_r_max, gt=0)
    n_points: int = Field(default_factory=lambda: settings.sweep_points, ge=2)
    spacing: Literal["linear", "log"] = "log"
    states: List[str] = Field(default_factory=lambda: ["1s", "2p", "2s", "3p"])
    engines: List[str] = Field(default_factory=lambda: ["coulomb"])

    @field_validator("states")
    @classmethod
    def _normalise_states(cls, value: List[str]) -> List[str]:
        if not value:
            raise ValueError("At least one state is required")
        return [str(StateLabel.parse(label)) for label in value]

    @field_validator("engines")
    @classmethod
    def _known_engines(cls, value: List[str]) -> List[str]:
        unknown = sorted(set(value) - set(ENGINE_NAMES))
        if unknown:
            raise ValueError(f"Unknown engines {unknown}; choose from {list(ENGINE_NAMES)}")
        return list(dict.fromkeys(value))

    @model_validator(mode="after")
    def _ordered_range(self) -> "SweepConfig":
        if not self.r_min < self.r_max:
            raise ValueError(f"r_min={self.r_min} must be smaller than r_max={self.r_max}")
        return self

    @property
    def labels(self) -> List[StateLabel]:
        return [StateLabel.parse(label) for label in self.states]

    def radii(self) -> List[Radius]:
        if self.spacing == "log":
            grid = np.geomspace(self.r_min, self.r_max, self.n_points)
        else:
            grid = np.linspace(self.r_min, self.r_max, self.n_points)
        return [Radius(float(r)) for r in grid]


class SweepRunner:
    """
    Evaluates engines row by row over a radius grid.

    Rows are computed concurrently on a thread pool and returned in grid
    order; every row starts with the `r` column.
    """

    DEFAULT_MAX_WORKERS = 4

    def __init__(
        self,
        engines: Sequence[BaseEngine],
        max_workers: int = DEFAULT_MAX_WORKERS,
        column_order: Optional[Sequence[str]] = None,
    ):
        """
        Args:
            engines: Engines merged into each row, in column order
            max_workers: Thread pool size (1 runs sequentially)
            column_order: Optional preferred ordering of engine columns;
                columns not listed keep their engine order at the end
        """
        self.engines = list(engines)
        self.max_workers = max(1, max_workers)
        self.column_order = list(column_order) if column_order else None

    @property
    def columns(self) -> List[str]:
        produced = [column for engine in self.engines for column in engine.columns]
        if self.column_order is None:
            return ["r"] + produced
        ordered = [column for column in self.column_order if column in produced]
        return ["r"] + ordered + [column for column in produced if column not in ordered]

    def _row(self, r: Radius) -> Row:
        row: Row = {"r": r.r}
        for engine in self.engines:
            row.update(engine(r))
        return row

    def run(self, radii: Sequence[Radius]) -> List[Row]:
        names = ", ".join(engine.engine_name for engine in self.engines)
        logger.info(f"Sweep over {len(radii)} radii with engines [{names}]")
        if self.max_workers == 1 or len(radii) < 2:
            rows = [self._row(r) for r in radii]
        else:
            with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
                rows = list(pool.map(self._row, radii))
        logger.info(f"Sweep completed: {len(rows)} rows")
        return rows

from typing import Dict, List

import numpy as np
import pytest
from pydantic import ValidationError

from src.core.exceptions import ConfigurationError
from src.exciton.engines import BaseEngine, CoulombEngine
from src.exciton.models import Radius, StateLabel
from src.exciton.sweep_runner import SweepConfig, SweepRunner
from src.services.exciton_service import ExcitonService, build_sweep_config


class ScaledEngine(BaseEngine):
    """Writes r times a constant into each of its columns."""

    def __init__(self, names: List[str], factor: float = 1.0):
        super().__init__("scaled")
        self.names = names
        self.factor = factor

    @property
    def columns(self) -> List[str]:
        return list(self.names)

    def execute(self, r: Radius) -> Dict[str, float]:
        return {name: self.factor * r.r for name in self.names}


class TestSweepConfig:
    def test_state_labels_are_normalised(self):
        config = SweepConfig(states=["2S", " 3p", "1s"], r_min=0.01, r_max=1.0)
        assert config.states == ["2s", "3p", "1s"]
        assert config.labels[0] == StateLabel.parse("2s")

    @pytest.mark.parametrize("states", [["1p"], ["x"], []])
    def test_invalid_states(self, states):
        with pytest.raises(ValidationError):
            SweepConfig(states=states)

    def test_unknown_engine(self):
        with pytest.raises(ValidationError):
            SweepConfig(engines=["coulomb", "magic"])

    def test_duplicate_engines_collapse(self):
        assert SweepConfig(engines=["oracle", "coulomb", "oracle"]).engines == ["oracle", "coulomb"]

    @pytest.mark.parametrize(
        "values",
        [
            {"r_min": 1.0, "r_max": 0.5},
            {"r_min": 0.0},
            {"n_points": 1},
            {"spacing": "cubic"},
        ],
    )
    def test_invalid_grid(self, values):
        with pytest.raises(ValidationError):
            SweepConfig(**values)

    def test_log_grid_endpoints(self):
        radii = SweepConfig(r_min=1e-3, r_max=1.0, n_points=4).radii()
        values = [r.r for r in radii]
        assert values[0] == pytest.approx(1e-3)
        assert values[-1] == pytest.approx(1.0)
        assert np.allclose(np.diff(np.log10(values)), 1.0)

    def test_linear_grid(self):
        radii = SweepConfig(r_min=0.1, r_max=0.5, n_points=5, spacing="linear").radii()
        assert [r.r for r in radii] == pytest.approx([0.1, 0.2, 0.3, 0.4, 0.5])

    def test_build_sweep_config_wraps_errors(self):
        assert build_sweep_config(r_min=None, r_max=0.5, n_points=3).r_max == 0.5
        with pytest.raises(ConfigurationError, match="n_points"):
            build_sweep_config(n_points=1)


class TestSweepRunner:
    def test_rows_follow_grid_order(self):
        radii = [Radius(r) for r in (0.5, 0.1, 0.3, 0.2)]
        rows = SweepRunner([ScaledEngine(["a"], 2.0)], max_workers=4).run(radii)
        assert [row["r"] for row in rows] == [0.5, 0.1, 0.3, 0.2]
        assert [row["a"] for row in rows] == pytest.approx([1.0, 0.2, 0.6, 0.4])

    def test_worker_count_does_not_change_results(self):
        radii = SweepConfig(r_min=0.01, r_max=1.0, n_points=6).radii()
        engine = CoulombEngine([StateLabel.parse("1s"), StateLabel.parse("2s")])
        sequential = SweepRunner([engine], max_workers=1).run(radii)
        threaded = SweepRunner([engine], max_workers=4).run(radii)
        assert sequential == threaded

    def test_columns_without_order(self):
        runner = SweepRunner([ScaledEngine(["b", "a"]), ScaledEngine(["c"])])
        assert runner.columns == ["r", "b", "a", "c"]

    def test_column_order_puts_unlisted_columns_last(self):
        runner = SweepRunner(
            [ScaledEngine(["b", "a"]), ScaledEngine(["c"])],
            column_order=["c", "missing", "a"],
        )
        assert runner.columns == ["r", "c", "a", "b"]

    def test_max_workers_floor(self):
        assert SweepRunner([], max_workers=0).max_workers == 1


class TestSpectrumSweep:
    def test_coulomb_columns(self, quad, oracle_grid):
        service = ExcitonService(quad, oracle_grid, max_workers=2)
        config = build_sweep_config(r_min=0.01, r_max=0.1, n_points=3, states=["1s", "2p"])
        table = service.spectrum_sweep(config, include_alpha=True)
        assert table.columns == ["r", "E_1s", "E_2p", "alpha_1s", "alpha_2p"]
        assert table.column("E_2p") == [-1.0, -1.0, -1.0]
        assert all(e == pytest.approx(-1.0 / a**2) for e, a in zip(table.column("E_1s"), table.column("alpha_1s")))

    def test_variational_engine_needs_a_trial_state(self, quad, oracle_grid):
        service = ExcitonService(quad, oracle_grid)
        config = build_sweep_config(states=["2s"], engines=["variational"])
        with pytest.raises(ConfigurationError):
            service.spectrum_sweep(config)


@pytest.mark.slow
def test_compare_table(quad):
    from src.exciton.oracle import GridSpec

    service = ExcitonService(quad, GridSpec(20.0, 2000), max_workers=2)
    config = build_sweep_config(r_min=0.05, r_max=0.2, n_points=2)
    table = service.compare_sweep(config, oracle=True)
    assert table.columns == [
        "r",
        "E_model_1s",
        "E_var_1s",
        "E_model_2p",
        "E_var_2p",
        "E_model_2s",
        "E_fd_odd",
        "E_fd_even",
    ]
    assert table.notes
    for row in table.rows:
        assert row["E_var_2p"] >= row["E_model_2p"] - 1e-6
        assert row["E_var_1s"] > row["E_model_1s"]
        assert row["E_model_1s"] < row["E_model_2p"] < row["E_model_2s"]

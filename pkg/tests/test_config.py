import pytest

from src.core.config import ExcitonSettings, load_config_file
from src.core.exception_handlers import ExceptionHandlerRegistry
from src.core.exceptions import (
    AccuracyError,
    ConfigurationError,
    ConvergenceError,
    DomainError,
    ExcitonError,
    OutputError,
    RootNotFoundError,
)
from src.exciton.models import QuadratureSpec
from src.services.container import ExcitonContainer


class TestLoadConfigFile:
    def test_no_file(self):
        assert load_config_file(None, {"r"}) == {}

    def test_keys_are_normalised(self, tmp_path):
        path = tmp_path / "flags.env"
        path.write_text("# sweep\nR-MIN = 0.01\nstates=1s,2p\n", encoding="utf-8")
        assert load_config_file(str(path), {"r_min", "states"}) == {"r_min": "0.01", "states": "1s,2p"}

    def test_unknown_key(self, tmp_path):
        path = tmp_path / "flags.env"
        path.write_text("r=0.1\nspin=up\n", encoding="utf-8")
        with pytest.raises(ConfigurationError, match="spin"):
            load_config_file(str(path), {"r"})

    def test_key_without_value(self, tmp_path):
        path = tmp_path / "flags.env"
        path.write_text("r\n", encoding="utf-8")
        with pytest.raises(ConfigurationError):
            load_config_file(str(path), {"r"})

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError):
            load_config_file(str(tmp_path / "nope.env"), {"r"})


class TestSettings:
    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("EXCITON_ROOT_TOL", "1e-9")
        monkeypatch.setenv("EXCITON_QUAD_X_NODES", "48")
        current = ExcitonSettings()
        assert current.root_tol == 1e-9
        assert current.quad_x_nodes == 48

    def test_quadrature_from_settings(self, monkeypatch):
        monkeypatch.setattr("src.exciton.models.settings.quad_x_nodes", 40)
        assert QuadratureSpec.from_settings().x_nodes == 40
        spec = QuadratureSpec.from_panels(30)
        assert (spec.x_nodes, spec.y_nodes) == (30, 20)


class TestContainer:
    def test_service_is_a_singleton(self):
        container = ExcitonContainer()
        assert container.service() is container.service()

    def test_provider_overrides(self, oracle_grid):
        from dependency_injector import providers

        container = ExcitonContainer()
        container.grid.override(providers.Object(oracle_grid))
        container.config.root_tol.from_value(1e-10)
        container.config.max_workers.from_value(1)
        service = container.service()
        assert service.grid is oracle_grid
        assert service.root_tol == 1e-10
        assert service.max_workers == 1


@pytest.mark.parametrize(
    "exc, code",
    [
        (DomainError("x"), 2),
        (ConfigurationError("x"), 2),
        (AccuracyError("x"), 3),
        (RootNotFoundError("x", scan=[(1.0, -0.5)]), 3),
        (ConvergenceError("x"), 3),
        (OutputError("x"), 4),
        (ExcitonError("x"), 1),
        (PermissionError("x"), 4),
        (KeyError("x"), 1),
    ],
)
def test_exit_codes(exc, code):
    assert ExceptionHandlerRegistry.exit_code_for(exc) == code


def test_root_not_found_keeps_scan():
    assert RootNotFoundError("no root").scan == []
    assert RootNotFoundError("no root", scan=[(0.5, 1.0)]).scan == [(0.5, 1.0)]

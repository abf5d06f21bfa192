"""Configuration management."""

from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import dotenv_values, load_dotenv
from pydantic_settings import BaseSettings, SettingsConfigDict

from src.core.exceptions import ConfigurationError

# Try to load .env file from multiple possible locations
env_paths = [
    Path.cwd() / ".env",  # Current working directory
    Path(__file__).parent.parent.parent / ".env",  # Project root (local dev)
]

for env_path in env_paths:
    if env_path.exists():
        load_dotenv(env_path, override=False)  # Don't override existing env vars
        break


class ExcitonSettings(BaseSettings):
    """Application settings."""

    # Logging
    log_level: str = "INFO"

    # Sweep execution
    max_workers: int = 4
    sweep_r_min: float = 1e-3
    sweep_r_max: float = 1.0
    sweep_points: int = 60

    # Quadrature defaults (shared by potential forms and the variational engine)
    quad_x_nodes: int = 96
    quad_y_nodes: int = 64
    quad_limit: int = 200
    quad_epsabs: float = 1e-13
    quad_epsrel: float = 1e-12

    # Root finding for the even-state condition
    root_tol: float = 1e-13

    # Finite-difference oracle box
    oracle_half_length: float = 25.0
    oracle_points: int = 10000

    # API Settings
    api_host: str = "0.0.0.0"
    api_port: int = 8000
    api_reload: bool = False

    model_config = SettingsConfigDict(
        env_prefix="EXCITON_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        env_ignore_empty=True,
        extra="ignore",
    )


def load_config_file(path: Optional[str], allowed_keys: set[str]) -> Dict[str, Any]:
    """
    Read a flat key=value config file whose keys mirror the CLI flags.

    Args:
        path: Path to the file, or None for no file
        allowed_keys: Flag destinations the file may set

    Returns:
        Mapping of flag destination to raw string value

    Raises:
        ConfigurationError: If the file is missing or contains unknown keys
    """
    if path is None:
        return {}

    config_path = Path(path)
    if not config_path.is_file():
        raise ConfigurationError(f"Config file not found: {config_path}")

    raw = dotenv_values(config_path)
    values: Dict[str, Any] = {}
    for key, value in raw.items():
        dest = key.strip().lower().replace("-", "_")
        if dest not in allowed_keys:
            raise ConfigurationError(f"Unknown key '{key}' in config file {config_path}")
        if value is None:
            raise ConfigurationError(f"Key '{key}' in config file {config_path} has no value")
        values[dest] = value.strip()
    return values


# Instantiate settings - works without a .env file since
# pydantic-settings reads environment variables directly
settings = ExcitonSettings()

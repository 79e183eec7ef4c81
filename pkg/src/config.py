"""Configuration management using Pydantic settings."""
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Runtime
    log_level: str = "INFO"
    log_format: str = "console"  # console | json

    # Finite differences
    chart_grid_step: float = 0.125
    curvature_step: float = 1e-3
    richardson: bool = False

    # Tolerances
    identity_tol: float = 1e-10
    exact_region_tol: float = 1e-14
    overlap_tol: float = 1e-9
    cut_limit_tol: float = 1e-12

    # Sweeps
    workers: int = 4
    seed: int = 20240917
    samples: int = 100_000

    # Complex-suite defaults (c * varsigma < e^-(4 + xi))
    default_xi: float = 0.5
    default_c: float = 1.1
    default_varsigma: float = 0.005

    # Width sets
    width_cap: int = 64

    # Output
    output_format: str = "json"


# Global settings instance
settings = Settings()

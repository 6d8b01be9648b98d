"""Toolkit configuration using Pydantic Settings"""
from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict


class CliSettings(BaseSettings):
    """Configuration from environment variables and an optional .env file"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore"
    )

    # Fitting
    default_degree: int = 2
    roundtrip_tolerance: float = 1e-6
    plot_samples: int = 200  # Dense fitted-curve rows per plot file

    # Sampling
    sample_seed: int = 20120101
    sample_p_low: float = 10.0
    sample_p_high: float = 100.0

    # Fixtures
    fixtures_path: str = ""  # Empty = the coefficient table shipped with the package

    # Logging
    log_level: str = "INFO"
    log_to_file: bool = False
    log_dir: str = "logs"
    log_file_max_bytes: int = 10 * 1024 * 1024  # 10MB
    log_file_backup_count: int = 5  # Keep 5 backup files
    log_rotation_type: str = "size"  # "size" or "time" (daily)

    @property
    def fixtures_file(self) -> Path:
        """Resolved path of the published coefficient table"""
        if self.fixtures_path:
            return Path(self.fixtures_path)
        return Path(__file__).parent / "data" / "published_fits.csv"


# Global settings instance
settings = CliSettings()

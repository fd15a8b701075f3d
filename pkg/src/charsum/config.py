"""
Configuration module using Pydantic Settings.

This module provides a Settings class that:
1. Reads configuration from CHARSUM_* environment variables (and .env file)
2. Validates that every setting is correctly typed
3. Provides desk-scale defaults for guards, tolerances and sampling

Usage:
    from charsum.config import get_settings

    settings = get_settings()
    print(settings.term_guard)
"""

from functools import lru_cache
from pathlib import Path

from pydantic import Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

# Find the project root (where .env is located)
_PROJECT_ROOT = Path(__file__).parent.parent.parent
_ENV_FILE = _PROJECT_ROOT / ".env"


class Settings(BaseSettings):
    """
    Application settings loaded from environment variables.
    """

    # Brute-force guards (number of summed terms)
    term_guard: int = Field(default=10**8, gt=0)  # every brute path, CHARSUM_TERM_GUARD
    gauss_term_guard: int = Field(default=10**7, gt=0)  # Gauss oracle, capped at term_guard

    # Largest modulus for which a full discrete-log table is built
    max_table_size: int = Field(default=10**6, gt=0)

    # Verification defaults
    tolerance: float = Field(default=1e-6, gt=0)
    sample_cap: int = Field(default=500, gt=0)  # characters per modulus when phi(q) > 5000
    triple_samples: int = Field(default=200, gt=0)  # random k=3 tuples per modulus
    seed: int = 0
    jobs: int = Field(default=1, gt=0)

    # Logging Configuration
    log_level: str = "INFO"

    # Pydantic Settings configuration
    model_config = SettingsConfigDict(
        env_prefix="CHARSUM_",
        env_file=str(_ENV_FILE),
        case_sensitive=False,
        extra="ignore",
    )

    @model_validator(mode="after")
    def cap_gauss_guard(self) -> "Settings":
        """A lowered term_guard also bounds the Gauss oracle."""
        if self.gauss_term_guard > self.term_guard:
            self.gauss_term_guard = self.term_guard
        return self


@lru_cache
def get_settings() -> Settings:
    """
    Get the application settings (cached).

    Settings don't change during a run, so the instance is built once.
    Tests that patch the environment call ``get_settings.cache_clear()``.

    Returns:
        Settings: The application settings instance
    """
    return Settings()

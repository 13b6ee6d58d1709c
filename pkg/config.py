"""
Configuration management for the genus counting toolkit
"""
from typing import Dict, Any
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="GENUS_",
        case_sensitive=False,
        extra="ignore",
    )

    # Application
    app_name: str = "Genus Counting Toolkit"
    app_version: str = "1.0.0"
    log_level: str = "WARNING"
    log_format: str = "console"

    # Enumeration oracles
    permutation_oracle_limit: int = 9
    partition_oracle_limit: int = 10
    annular_oracle_limit: int = 8
    jobs: int = 1

    # Series precision
    truncation_margin: int = 1

    # Cache
    cache_dir: str = ".genus_cache"
    cache_enabled: bool = True


# Global settings instance
settings = Settings()


def get_oracle_limits() -> Dict[str, int]:
    """Get oracle size limits keyed by enumeration kind"""
    return {
        "permutation": settings.permutation_oracle_limit,
        "partition": settings.partition_oracle_limit,
        "annular": settings.annular_oracle_limit,
    }


def get_cache_config() -> Dict[str, Any]:
    """Get artifact cache configuration"""
    return {
        "cache_dir": settings.cache_dir,
        "enabled": settings.cache_enabled,
    }

from pydantic_settings import BaseSettings
from functools import lru_cache


class Settings(BaseSettings):
    """Engine settings loaded from environment variables."""

    # Nichols symmetrizers
    symmetrizer_cap: int = 4096
    nichols_max_degree: int = 4
    evidence_max_degree: int = 6

    # Presentations
    basis_cap: int = 4096
    closure_max_degree: int = 4

    # Liftings
    antipode_max_dim: int = 64

    # Reports
    report_indent: int = 2
    log_level: str = "INFO"

    # Security
    api_key: str = "local-key"

    class Config:
        env_file = ".env"
        case_sensitive = False


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()

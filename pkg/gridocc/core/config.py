"""
Application Configuration
"""
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Environment-level defaults. Run-specific values live in RunConfig."""

    # Application
    APP_NAME: str = "GridOCC"
    LOG_LEVEL: str = "INFO"

    # Artifacts
    OUTPUT_DIR: str = "./runs"

    # Parallel fitness evaluations inside one GA generation
    N_JOBS: int = 1

    # Format tags written into every artifact header
    MODEL_FORMAT: str = "gridocc-model/1"
    DATASET_FORMAT: str = "gridocc-jsonl/1"
    STATS_FORMAT: str = "gridocc-stats/1"
    REPORT_FORMAT: str = "gridocc-report/1"

    model_config = SettingsConfigDict(env_file=".env", env_prefix="GRIDOCC_", extra="ignore")


settings = Settings()


def get_settings() -> Settings:
    return settings

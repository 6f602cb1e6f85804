"""Configuration management for the simulation toolkit."""

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Runtime settings loaded from environment variables.

    Only knobs that cannot change a result live here. Experiment parameters
    come from config files and command-line flags.
    """

    model_config = SettingsConfigDict(
        env_prefix="DQS_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )

    # Application Configuration
    log_level: str = Field(default="INFO", description="Logging level")
    debug: bool = Field(default=False, description="Debug mode (forces DEBUG logging)")
    environment: str = Field(default="development", description="Environment (production renders JSON logs)")

    # Execution
    workers: int = Field(default=1, ge=1, description="Threads used to evaluate disorder realizations")
    output_dir: str = Field(default="results", description="Default directory for command outputs")


# Global settings instance
settings = Settings()

"""Configuration settings for the dominion toolkit."""
from pathlib import Path
from typing import Literal, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings loaded from environment variables (prefix ``DOMINION_``)."""

    model_config = SettingsConfigDict(
        env_prefix="DOMINION_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore",
    )

    # Search guardrails
    ORDER_CAP: int = Field(20000, gt=0, description="Largest group order any construction may build")
    WITNESS_ORDER_CAP: int = Field(
        2000, gt=0, description="Largest witness group materialised automatically"
    )
    NODE_BUDGET: int = Field(
        10_000_000, gt=0, description="Backtracking node budget for homomorphism search"
    )
    JOBS: int = Field(1, ge=1, description="Worker processes for parallel stages")

    # Algorithm switches
    VERBAL_CLASS_REPRESENTATIVES: bool = Field(
        False, description="Restrict the first law variable to conjugacy-class representatives"
    )

    # Output
    OUTPUT_FORMAT: Literal["text", "json"] = Field("text", description="Report format")

    # Logging
    LOG_LEVEL: str = Field("WARNING", description="Logging level")
    LOG_FORMAT: str = Field(
        "{time:YYYY-MM-DD HH:mm:ss} | {level} | {message}",
        description="Log format"
    )
    LOG_FILE: Optional[Path] = Field(None, description="Optional log file")


# Create global settings instance
settings = Settings()

from functools import lru_cache
from pathlib import Path
from typing import Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="ZPGABOR_", env_file=".env", extra="ignore")

    enumeration_cap: int = Field(default=30000, ge=1)
    subset_enumeration_cap: int = Field(default=2 ** 20, ge=1)
    float_tolerance: float = Field(default=1e-9, gt=0)
    prefilter_tolerance: float = Field(default=1e-6, gt=0)
    checkpoint_interval: int = Field(default=1000, ge=1)
    default_node_budget: int = Field(default=10 ** 7, ge=1)
    report_db: Path = Path("zpgabor_reports.db")
    log_file: Optional[Path] = Path("zpgabor.log")
    log_level: str = "INFO"


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings()

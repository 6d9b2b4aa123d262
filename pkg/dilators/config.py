from __future__ import annotations
from functools import lru_cache
from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import Field


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="DILATORS_",
    )
    DEBUG: bool = Field(default=False)
    DEFAULT_BOUND: int = Field(
        default=8,
        description="Arity bound used by the law validators when none is given",
    )
    DEFAULT_SEED: int = Field(default=0)
    FUND_SAMPLES: int = Field(
        default=1000,
        description="Premise-satisfying instances drawn per clause of the fundamental-lemma battery",
    )
    ARITY_LIMIT: int = Field(
        default=5,
        description="Largest constructor arity used by samplers and by enumeration of D(eta)",
    )
    MAX_UNIVERSE: int = Field(
        default=16,
        description="Largest universe accepted for resemblance tables; bigger ones are refused",
    )
    WF_BUDGET: int = Field(default=1000)
    WORKERS: int = Field(
        default=1,
        description="Thread count for batteries and table rows; 1 keeps everything on the calling thread",
    )
    SAMPLE_SIZE: int = Field(
        default=24,
        description="Elements drawn from an infinite fiber when a law can only be sampled",
    )


@lru_cache()
def get_settings() -> Settings:
    return Settings()

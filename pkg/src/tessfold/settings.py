import os
from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

BASE_DIR = os.path.dirname(os.path.abspath(__file__))


class Settings(BaseSettings):
    """ Global settings

    tolerance: the report tolerance written to analysis reports (ORIGAMI_SELFFOLD_TOLERANCE)
    max_enumeration_vertices: interior vertex cap for exhaustive mode enumeration
    workers: number of threads used for mode enumeration
    """
    model_config = SettingsConfigDict(env_prefix="ORIGAMI_SELFFOLD_")

    tolerance: float = 1e-9
    max_enumeration_vertices: int = 20
    workers: int = 1

    @field_validator("tolerance")
    @classmethod
    def tolerance_positive(cls, value: float) -> float:
        if value <= 0:
            raise ValueError("tolerance must be positive")
        return value

    @field_validator("max_enumeration_vertices", "workers")
    @classmethod
    def count_positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("value must be at least 1")
        return value

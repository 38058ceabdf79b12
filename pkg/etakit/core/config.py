from pydantic_settings import BaseSettings
from functools import lru_cache


class Settings(BaseSettings):
    # Project Info
    PROJECT_NAME: str = "etakit"
    VERSION: str = "0.1.0"

    # pi1 engine
    ETAKIT_BUDGET: int = 10000
    ETAKIT_LENGTH_GROWTH: int = 4

    # Corpus
    ETAKIT_CORPUS: str = "./corpus"

    # Logging
    ETAKIT_LOG_LEVEL: str = "WARNING"

    # eta table / cover oracle
    ETAKIT_TABLE_WORKERS: int = 4
    ETAKIT_ORACLE_MARGIN: int = 2

    class Config:
        env_file = ".env"
        case_sensitive = True
        extra = "ignore"


@lru_cache()
def get_settings() -> Settings:
    return Settings()

from typing import List
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="CORRNET_", env_file=".env", extra="ignore"
    )

    title: str = "corrnet"
    description: str = (
        "Correlated attributed random networks: sampling, matching, "
        "community recovery and threshold maps"
    )
    version: str = "0.1.0"

    allow_origins: List[str] = ["*"]
    allow_credentials: bool = True
    allow_methods: List[str] = ["*"]
    allow_headers: List[str] = ["*"]

    log_level: str = "INFO"
    jobs: int = 1

    default_eps: float = 0.1
    theorem_constant: float = 0.0

    power_max_iters: int = 200
    power_tol: float = 1e-8
    power_seed: int = 0
    refine_max_sweeps: int = 30
    lloyd_max_iters: int = 50

    kcore_exact_limit: int = 8
    oracle_max_n: int = 8
    oracle_max_states: int = 5_000_000
    quad_tol: float = 1e-10

    api_max_n: int = 5000


settings = Settings()

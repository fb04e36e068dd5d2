from typing import Annotated

from pydantic import AfterValidator, BaseModel, PositiveInt, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from sympy import isprime


def _all_prime(value: list[int]) -> list[int]:
    if not value:
        raise ValueError("at least one prime is required")
    bad = [p for p in value if not isprime(p)]
    if bad:
        raise ValueError(f"not prime: {bad}")
    return value


Primes = Annotated[list[int], AfterValidator(_all_prime)]


class Caps(BaseModel):
    max_elements: PositiveInt = 200_000
    max_chains: PositiveInt = 2_000_000
    max_backtrack_nodes: PositiveInt = 10_000_000


class Settings(BaseSettings):
    # HOMBOUND_CAPS='{"max_elements": 5000}' overrides any subset of the caps
    caps: Caps = Caps()
    primes: Primes = [2, 32003]
    dim_cap: int = 4
    dense_order_limit: int = 4096
    max_group_order: int = 64
    max_target_vertices: int = 62
    log_level: str = "WARNING"

    model_config = SettingsConfigDict(env_prefix="HOMBOUND_", env_file=".env", extra="ignore")

    @field_validator("dim_cap")
    @classmethod
    def dim_cap_positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("dim_cap must be at least 1")
        return value


settings = Settings()

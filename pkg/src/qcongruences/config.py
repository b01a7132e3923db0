"""Configuration for qcongruences."""

import os

from dotenv import load_dotenv
from pydantic import BaseModel, Field

load_dotenv()


class LimitsConfig(BaseModel):
    """Resource ceilings for expansions and the worker pool."""

    max_trunc: int = Field(default_factory=lambda: int(os.getenv("QCONG_MAX_TRUNC", "50000")))
    threads: int = Field(default_factory=lambda: int(os.getenv("QCONG_THREADS", "0")))


class DefaultsConfig(BaseModel):
    """Default truncations used by `verify all` and the scanner."""

    identity_trunc: int = Field(
        default_factory=lambda: int(os.getenv("QCONG_IDENTITY_TRUNC", "300"))
    )
    base_nmax: int = Field(default_factory=lambda: int(os.getenv("QCONG_BASE_NMAX", "500")))
    claim_nmax: int = Field(default_factory=lambda: int(os.getenv("QCONG_CLAIM_NMAX", "50")))
    claim_nmax_lifted: int = Field(
        default_factory=lambda: int(os.getenv("QCONG_CLAIM_NMAX_LIFTED", "5"))
    )
    family_nmax: int = Field(
        default_factory=lambda: int(os.getenv("QCONG_FAMILY_NMAX", "300"))
    )
    scan_samples: int = Field(default_factory=lambda: int(os.getenv("QCONG_SCAN_SAMPLES", "50")))


class LoggingConfig(BaseModel):
    """Logging configuration."""

    level: str = Field(default_factory=lambda: os.getenv("QCONG_LOG_LEVEL", "WARNING"))


class Config(BaseModel):
    """Main configuration."""

    limits: LimitsConfig = Field(default_factory=LimitsConfig)
    defaults: DefaultsConfig = Field(default_factory=DefaultsConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)


config = Config()

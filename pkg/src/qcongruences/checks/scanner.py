"""Empirical search for progressions An + B on which Q_t^s vanishes mod m."""

from __future__ import annotations

import logging
import time
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator

from .. import __version__
from ..config import config
from ..errors import TruncationCeilingError
from ..qseries.oracle import PartitionSpec
from .theorems import Convention, q_table

logger = logging.getLogger(__name__)

RowStatus = Literal["candidate", "identically-zero", "rejected"]


class ScanConfig(BaseModel):
    """What to scan. An empty `moduli` list scans for exact vanishing (reported as m = 0)."""

    model_config = ConfigDict(frozen=True)

    spec: PartitionSpec
    convention: Convention = "series"
    moduli: list[int] = Field(default_factory=list)
    A_max: int = Field(ge=2)
    n_samples: int = Field(default_factory=lambda: config.defaults.scan_samples, ge=20)
    include_rejected: bool = False

    @field_validator("moduli")
    @classmethod
    def _moduli_at_least_two(cls, moduli: list[int]) -> list[int]:
        bad = [m for m in moduli if m < 2]
        if bad:
            raise ValueError(f"moduli must be >= 2, got {bad}")
        return sorted(set(moduli))

    @computed_field
    @property
    def trunc(self) -> int:
        return self.A_max * self.n_samples + self.A_max


class ScanRow(BaseModel):
    """One (A, B, m) cell. Candidates are empirical: they held on `support` samples."""

    model_config = ConfigDict(frozen=True)

    A: int
    B: int
    m: int  # 0 for the exact-vanishing scan
    support: int
    status: RowStatus
    evidence: Literal["empirical"] = "empirical"
    witness_n: int | None = None  # first n with Q(An+B) != 0 (mod m), for rejected rows


class ScanReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    version: str = __version__
    command: str = "scan"
    params: dict[str, Any] = Field(default_factory=dict)
    rows: list[ScanRow] = Field(default_factory=list)
    millis: float = 0.0

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)


def _classify(values: list[int], m: int) -> tuple[RowStatus, int | None]:
    if not any(values):
        return "identically-zero", None
    if m == 0:
        return "rejected", next(n for n, v in enumerate(values) if v)
    for n, v in enumerate(values):
        if v % m:
            return "rejected", n
    return "candidate", None


def scan(cfg: ScanConfig, max_trunc: int | None = None) -> list[ScanRow]:
    """Every (A, B, m) with 1 <= A <= A_max, 0 <= B < A, ordered by (A, B, m).

    Raises:
        TruncationCeilingError: cfg.trunc exceeds the ceiling
    """
    ceiling = config.limits.max_trunc if max_trunc is None else max_trunc
    if cfg.trunc > ceiling:
        raise TruncationCeilingError(cfg.trunc, ceiling)

    q = q_table(cfg.spec.t, cfg.spec.s, cfg.convention, cfg.trunc)
    moduli = cfg.moduli or [0]
    rows: list[ScanRow] = []
    for A in range(1, cfg.A_max + 1):
        for B in range(A):
            values = [q[A * n + B] for n in range(cfg.n_samples)]
            for m in moduli:
                status, witness = _classify(values, m)
                if status == "rejected" and not cfg.include_rejected:
                    continue
                rows.append(
                    ScanRow(A=A, B=B, m=m, support=cfg.n_samples, status=status, witness_n=witness)
                )
    logger.info(
        "scanned %s (%s) to A=%d: %d rows", cfg.spec, cfg.convention, cfg.A_max, len(rows)
    )
    return rows


def run_scan(cfg: ScanConfig, max_trunc: int | None = None) -> ScanReport:
    start = time.perf_counter()
    rows = scan(cfg, max_trunc)
    return ScanReport(
        params=cfg.model_dump(mode="json"),
        rows=rows,
        millis=round((time.perf_counter() - start) * 1000, 3),
    )

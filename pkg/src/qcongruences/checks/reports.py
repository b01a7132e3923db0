"""Report value objects shared by the identity catalog, theorem engine and CLI."""

from __future__ import annotations

from datetime import datetime
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .. import __version__

Status = Literal["pass", "fail", "skipped", "divergent"]


class Mismatch(BaseModel):
    """First index where the two sides of a check disagree."""

    model_config = ConfigDict(frozen=True)

    n: int
    lhs: int
    rhs: int


class VerificationReport(BaseModel):
    """Outcome of one identity or claim check."""

    model_config = ConfigDict(frozen=True)

    id: str
    convention: str | None = None  # series, squared, unsquared; None for identities
    trunc: int
    modulus: int | None = None
    status: Status
    first_mismatch: Mismatch | None = None
    millis: float = 0.0
    family: str | None = None
    t: int | None = None
    s: int | None = None
    A: int | None = None
    B: int | None = None
    n_max: int | None = None
    advisory: bool = False
    note: str | None = None

    @model_validator(mode="after")
    def _mismatch_matches_status(self) -> VerificationReport:
        failing = self.status in ("fail", "divergent")
        if failing != (self.first_mismatch is not None):
            raise ValueError(f"status {self.status!r} inconsistent with first_mismatch")
        if self.status == "divergent" and not self.advisory:
            raise ValueError("only advisory checks can be divergent")
        return self

    @property
    def passed(self) -> bool:
        return self.status == "pass"


class Summary(BaseModel):
    """Per-status tally of a report list."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    passed: int = Field(default=0, alias="pass")
    failed: int = Field(default=0, alias="fail")
    skipped: int = 0
    divergent: int = 0

    @classmethod
    def tally(cls, reports: list[VerificationReport]) -> Summary:
        statuses = [r.status for r in reports]
        return cls(
            passed=statuses.count("pass"),
            failed=statuses.count("fail"),
            skipped=statuses.count("skipped"),
            divergent=statuses.count("divergent"),
        )


class RunReport(BaseModel):
    """Everything one CLI invocation checked."""

    model_config = ConfigDict(frozen=True)

    version: str = __version__
    command: str
    params: dict[str, Any] = Field(default_factory=dict)
    reports: list[VerificationReport] = Field(default_factory=list)
    summary: Summary = Field(default_factory=Summary)
    millis: float = 0.0
    created_at: str = Field(default_factory=lambda: datetime.now().isoformat())

    @model_validator(mode="after")
    def _summary_matches_reports(self) -> RunReport:
        if self.summary != Summary.tally(self.reports):
            raise ValueError("summary counts do not match the report list")
        return self

    @classmethod
    def build(
        cls,
        command: str,
        params: dict[str, Any],
        reports: list[VerificationReport],
        millis: float,
    ) -> RunReport:
        return cls(
            command=command,
            params=params,
            reports=reports,
            summary=Summary.tally(reports),
            millis=millis,
        )

    @property
    def exit_code(self) -> int:
        return 1 if self.summary.failed else 0

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)

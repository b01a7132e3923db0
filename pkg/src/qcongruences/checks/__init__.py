"""Identity catalog, theorem engine, congruence scanner and their reports."""

from .reports import Mismatch, RunReport, Summary, VerificationReport

__all__ = ["Mismatch", "RunReport", "Summary", "VerificationReport"]

"""Combinatorial partition counts, independent of the series machinery.

Every table is one dynamic-programming pass over the allowed parts in
increasing order: a 0/1 knapsack for distinct parts, an unbounded knapsack
when parts may repeat. Index n of a table is the count for n.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterator
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import SpecError

logger = logging.getLogger(__name__)

WITNESS_LIMIT = 40

OracleKind = Literal["qts", "p", "pd", "po", "b"]


class PartitionSpec(BaseModel):
    """The pair (t, s) of Q_t^s: distinct parts, none congruent to s or t - s mod t."""

    model_config = ConfigDict(frozen=True)

    t: int = Field(ge=1)
    s: int = Field(ge=1)

    @model_validator(mode="after")
    def _residue_in_range(self) -> PartitionSpec:
        if self.s > self.t:
            raise ValueError(f"need 1 <= s <= t, got t={self.t}, s={self.s}")
        return self

    @property
    def forbidden(self) -> frozenset[int]:
        return frozenset({self.s % self.t, (self.t - self.s) % self.t})

    def allows(self, part: int) -> bool:
        return part % self.t not in self.forbidden

    def __str__(self) -> str:
        return f"Q_{self.t}^{self.s}"


def _check(n: int) -> None:
    if n < 0:
        raise SpecError(f"n must be >= 0, got {n}")


def _distinct(n_max: int, allowed: Callable[[int], bool], modulus: int | None) -> list[int]:
    _check(n_max)
    table = [1] + [0] * n_max
    for part in range(1, n_max + 1):
        if not allowed(part):
            continue
        # both slices are taken before assignment, so each part is used at most once
        if modulus is None:
            table[part:] = [x + y for x, y in zip(table[part:], table)]
        else:
            table[part:] = [(x + y) % modulus for x, y in zip(table[part:], table)]
    return table


def _repeated(n_max: int, allowed: Callable[[int], bool], modulus: int | None) -> list[int]:
    _check(n_max)
    table = [1] + [0] * n_max
    for part in range(1, n_max + 1):
        if not allowed(part):
            continue
        for lo in range(part, n_max + 1, part):
            block = zip(table[lo : lo + part], table[lo - part : lo])
            if modulus is None:
                table[lo : lo + part] = [x + y for x, y in block]
            else:
                table[lo : lo + part] = [(x + y) % modulus for x, y in block]
    return table


# ----------------------------------------------------------------------
# Tables
# ----------------------------------------------------------------------


def table_qts(spec: PartitionSpec, n_max: int, modulus: int | None = None) -> list[int]:
    """Q_t^s(n) for 0 <= n <= n_max."""
    table = _distinct(n_max, spec.allows, modulus)
    logger.debug("oracle table for %s to %d (modulus %s)", spec, n_max, modulus)
    return table


def table_p(n_max: int, modulus: int | None = None) -> list[int]:
    return _repeated(n_max, lambda part: True, modulus)


def table_pd(n_max: int, modulus: int | None = None) -> list[int]:
    return _distinct(n_max, lambda part: True, modulus)


def table_po(n_max: int, modulus: int | None = None) -> list[int]:
    return _repeated(n_max, lambda part: part % 2 == 1, modulus)


def table_b_nondiv(n_max: int, k: int, modulus: int | None = None) -> list[int]:
    """Partitions with no part divisible by k (b_6 for k = 6)."""
    if k < 2:
        raise SpecError(f"k must be >= 2, got {k}")
    return _repeated(n_max, lambda part: part % k != 0, modulus)


def table(
    kind: OracleKind,
    n_max: int,
    *,
    spec: PartitionSpec | None = None,
    k: int | None = None,
    modulus: int | None = None,
) -> list[int]:
    """Dispatch on the counting function's short name."""
    if kind == "qts":
        if spec is None:
            raise SpecError("qts needs t and s")
        return table_qts(spec, n_max, modulus)
    if kind == "b":
        if k is None:
            raise SpecError("b needs k")
        return table_b_nondiv(n_max, k, modulus)
    builders = {"p": table_p, "pd": table_pd, "po": table_po}
    if kind not in builders:
        raise SpecError(f"unknown partition function {kind!r}")
    return builders[kind](n_max, modulus)


# ----------------------------------------------------------------------
# Scalar counts
# ----------------------------------------------------------------------


def count_qts(spec: PartitionSpec, n: int) -> int:
    return table_qts(spec, n)[n]


def count_p(n: int) -> int:
    return table_p(n)[n]


def count_pd(n: int) -> int:
    return table_pd(n)[n]


def count_po(n: int) -> int:
    return table_po(n)[n]


def count_b_nondiv(n: int, k: int) -> int:
    return table_b_nondiv(n, k)[n]


# ----------------------------------------------------------------------
# Witnesses
# ----------------------------------------------------------------------


def _partitions(
    n: int, largest: int, allowed: Callable[[int], bool], distinct: bool
) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for part in range(min(n, largest), 0, -1):
        if not allowed(part):
            continue
        nxt = part - 1 if distinct else part
        for rest in _partitions(n - part, nxt, allowed, distinct):
            yield (part, *rest)


def enumerate_partitions(
    n: int, *, distinct: bool = False, allowed: Callable[[int], bool] | None = None
) -> list[tuple[int, ...]]:
    """Partitions of n, parts in descending order, largest first part first.

    Debug enumerator for printing witnesses; refuses n > 40.
    """
    _check(n)
    if n > WITNESS_LIMIT:
        raise SpecError(f"witness listing is limited to n <= {WITNESS_LIMIT}, got {n}")
    return list(_partitions(n, n, allowed or (lambda part: True), distinct))


def enumerate_qts(spec: PartitionSpec, n: int) -> list[tuple[int, ...]]:
    return enumerate_partitions(n, distinct=True, allowed=spec.allows)


def witnesses(
    kind: OracleKind,
    n: int,
    *,
    spec: PartitionSpec | None = None,
    k: int | None = None,
) -> list[tuple[int, ...]]:
    if kind == "qts":
        if spec is None:
            raise SpecError("qts needs t and s")
        return enumerate_qts(spec, n)
    if kind == "p":
        return enumerate_partitions(n)
    if kind == "pd":
        return enumerate_partitions(n, distinct=True)
    if kind == "po":
        return enumerate_partitions(n, allowed=lambda part: part % 2 == 1)
    if kind == "b":
        if k is None or k < 2:
            raise SpecError("b needs k >= 2")
        return enumerate_partitions(n, allowed=lambda part: part % k != 0)
    raise SpecError(f"unknown partition function {kind!r}")


def format_partition(parts: tuple[int, ...]) -> str:
    return "+".join(str(part) for part in parts) if parts else "(empty)"

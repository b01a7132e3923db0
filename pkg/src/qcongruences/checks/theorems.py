"""Congruence theorems for Q_t^s as finite, checkable claims.

A theorem family plus parameters (alpha, p, beta, j) instantiates to one or
more `CongruenceClaim`s, each a statement about the values Q_t^s(An + B).
`verify_claim` reads those values under one convention and checks the
claimed relation for 0 <= n <= n_max.

Conventions:
    series     coefficients of f2 f_t / (f1 f(q^s, q^(t-s)))
    squared    the Pochhammer quotient with both denominator factors
    unsquared  the partition oracle (a shared factor divided out once)

The three agree unless s = t - s (mod t). For those specs the series reading
is authoritative and the other two are attached as advisory checks.
"""

from __future__ import annotations

import logging
import time
from collections import Counter
from collections.abc import Iterable
from enum import Enum
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy import isprime

from ..config import config
from ..errors import NotApplicableError, SpecError, TruncationCeilingError
from ..qseries import oracle
from ..qseries import qfactory as qf
from ..qseries.oracle import PartitionSpec
from ..qseries.series import Series
from .identities import legendre
from .reports import Mismatch, VerificationReport
from .runner import run_ordered

logger = logging.getLogger(__name__)

Convention = Literal["series", "squared", "unsquared"]
CONVENTIONS: tuple[Convention, ...] = ("series", "squared", "unsquared")


class Family(str, Enum):
    T31 = "T31"
    T31a = "T31a"
    T32 = "T32"
    T32a = "T32a"
    T33 = "T33"
    T34 = "T34"
    T35a = "T35a"
    T35b = "T35b"
    T36a = "T36a"
    T36b = "T36b"
    T37a = "T37a"
    T37b = "T37b"
    T38 = "T38"
    T39 = "T39"


class Relation(str, Enum):
    ZERO_MOD = "zero-mod"
    EXACT_ZERO = "exact-zero"
    EQUALS_PO = "equals-po"
    CONGRUENT_B6 = "b6-mod-2"
    CONGRUENT_REFERENCE = "reference-mod"


STATEMENTS: dict[Family, str] = {
    Family.T31: "Q_{2a}^a(p^(2b+1)(pn+j) + (2a+1)(p^(2b+2)-1)/24) = 0 (mod 2), (-2a/p) = -1",
    Family.T31a: "sum Q_{2a}^a(p^(2b) n + (2a+1)(p^(2b)-1)/24) q^n = f1 f_{2a} (mod 2)",
    Family.T32: "Q_{4a}^a(p^(2b+1)(pn+j) + (a+1)(p^(2b+2)-1)/24) = 0 (mod 2), (-a/p) = -1",
    Family.T32a: "sum Q_{4a}^a(p^(2b) n + (a+1)(p^(2b)-1)/24) q^n = f1 f_a (mod 2)",
    Family.T33: "Q_{5a}^5(5n+i) = 0 (mod 2), i = 3, 4, a >= 2",
    Family.T34: "Q_{7a}^7(7n+i) = 0 (mod 2), i = 3, 4, 6, a >= 2",
    Family.T35a: "Q_3^2(3n+1) = Q_3^2(3n+2) = 0",
    Family.T35b: "Q_3^2(3n) = p_o(n)",
    Family.T36a: "sum Q_4^2(p^(2b) n + 5(p^(2b)-1)/24) q^n = psi(q) f2 (mod 4), (-6/p) = -1",
    Family.T36b: "Q_4^2(p^(2b+1)(pn+j) + 5(p^(2b+2)-1)/24) = 0 (mod 4), (-6/p) = -1",
    Family.T37a: "Q_4^3(2n+1) = 0",
    Family.T37b: "Q_4^3(2n) = p_o(n)",
    Family.T38: "Q_6^2(n) = b_6(n) (mod 2)",
    Family.T39: "Q_12^2(3n+2) = 0 (mod 2)",
}


class CongruenceClaim(BaseModel):
    """Q_t^s(An + B) stands in `relation` to zero, p_o(n), b_6(n) or a reference series."""

    model_config = ConfigDict(frozen=True)

    family: Family
    alpha: int | None = None
    p: int | None = None
    beta: int | None = None
    j: int | None = None
    i: int | None = None
    t: int = Field(ge=2)
    s: int = Field(ge=1)
    A: int = Field(ge=1)
    B: int = Field(ge=0)
    relation: Relation
    modulus: int | None = None
    reference: dict[int, int] | None = None  # eta exponents {k: e} for reference-mod
    convention: Convention = "series"
    advisory: bool = False
    note: str | None = None

    @model_validator(mode="after")
    def _relation_is_complete(self) -> CongruenceClaim:
        if self.s >= self.t:
            raise ValueError(f"need s < t, got t={self.t}, s={self.s}")
        modular = self.relation in (
            Relation.ZERO_MOD,
            Relation.CONGRUENT_B6,
            Relation.CONGRUENT_REFERENCE,
        )
        if modular != (self.modulus is not None):
            raise ValueError(f"relation {self.relation.value} and modulus {self.modulus} disagree")
        if (self.relation == Relation.CONGRUENT_REFERENCE) != (self.reference is not None):
            raise ValueError("a reference series goes with the reference-mod relation only")
        return self

    @property
    def spec(self) -> PartitionSpec:
        return PartitionSpec(t=self.t, s=self.s)

    @property
    def self_paired(self) -> bool:
        return qf.is_self_paired(self.t, self.s)

    @property
    def id(self) -> str:
        named = [("alpha", self.alpha), ("p", self.p), ("beta", self.beta), ("j", self.j)]
        params = ",".join(f"{k}={v}" for k, v in named if v is not None)
        head = f"{self.family.value}({params})" if params else self.family.value
        return f"{head}:{self.A}n+{self.B}"

    def required_trunc(self, n_max: int) -> int:
        return self.A * n_max + self.B

    def describe(self) -> str:
        lhs = f"Q_{self.t}^{self.s}({self.A}n+{self.B})"
        if self.relation == Relation.ZERO_MOD:
            return f"{lhs} = 0 (mod {self.modulus})"
        if self.relation == Relation.EXACT_ZERO:
            return f"{lhs} = 0"
        if self.relation == Relation.EQUALS_PO:
            return f"{lhs} = p_o(n)"
        if self.relation == Relation.CONGRUENT_B6:
            return f"{lhs} = b_6(n) (mod {self.modulus})"
        terms = sorted(self.reference.items())
        ref = " ".join(f"f{k}^{e}" if e != 1 else f"f{k}" for k, e in terms)
        return f"sum {lhs} q^n = {ref} (mod {self.modulus})"


# ----------------------------------------------------------------------
# Instantiation
# ----------------------------------------------------------------------


def resolve_families(name: str) -> list[Family]:
    """`T36` means both T36a and T36b; an exact family name means just that one."""
    try:
        return [Family(name)]
    except ValueError:
        pass
    matches = [f for f in Family if f.value.startswith(name) and f.value[len(name) :].isalpha()]
    if not name or not matches:
        raise SpecError(f"unknown theorem family {name!r}; known: {', '.join(Family)}")
    return matches


def _require(value: int | None, what: str, family: Family) -> int:
    if value is None:
        raise SpecError(f"{family.value} needs {what}")
    return value


def _check_prime(p: int, family: Family) -> None:
    if p < 5 or not isprime(p):
        raise NotApplicableError(f"{family.value} needs a prime p >= 5, got p={p}")


def _check_legendre(a: int, p: int, label: str, family: Family) -> None:
    symbol = legendre(a, p)
    if symbol != -1:
        raise NotApplicableError(
            f"{family.value} needs legendre({label}, p) = -1, "
            f"but legendre({a}, {p}) = {symbol:+d}"
        )


def _offset(coefficient: int, power: int, divisor: int, family: Family) -> int:
    numerator = coefficient * (power - 1)
    if numerator % divisor:
        raise NotApplicableError(
            f"{family.value} offset {coefficient}({power}-1)/{divisor} is not an integer"
        )
    return numerator // divisor


def _merge(*factors: dict[int, int]) -> dict[int, int]:
    total: Counter[int] = Counter()
    for factor in factors:
        total.update(factor)
    return {k: e for k, e in sorted(total.items()) if e}


def _j_values(j: int | None, p: int, family: Family) -> list[int]:
    if j is None:
        return list(range(1, p))
    if not 1 <= j <= p - 1:
        raise NotApplicableError(f"{family.value} needs 1 <= j <= p-1, got j={j}, p={p}")
    return [j]


def _instantiate_primary(
    family: Family,
    alpha: int | None,
    p: int | None,
    beta: int,
    j: int | None,
    as_printed: bool,
) -> list[CongruenceClaim]:
    if beta < 0:
        raise SpecError(f"beta must be >= 0, got {beta}")

    if family in (Family.T31, Family.T31a, Family.T32, Family.T32a):
        alpha = _require(alpha, "alpha", family)
        if alpha < 1:
            raise SpecError(f"alpha must be >= 1, got {alpha}")
        doubled = family in (Family.T31, Family.T31a)
        t, s = (2 * alpha, alpha) if doubled else (4 * alpha, alpha)
        weight = 2 * alpha + 1 if doubled else alpha + 1
        symbol, label = (-2 * alpha, "-2*alpha") if doubled else (-alpha, "-alpha")
        reference = _merge({1: 1}, {2 * alpha if doubled else alpha: 1})

        if family in (Family.T31a, Family.T32a):
            if beta == 0 and p is None:
                return [
                    CongruenceClaim(
                        family=family, alpha=alpha, beta=0, t=t, s=s, A=1, B=0,
                        relation=Relation.CONGRUENT_REFERENCE, modulus=2, reference=reference,
                    )
                ]
            p = _require(p, "p", family)
            _check_prime(p, family)
            _check_legendre(symbol, p, label, family)
            A = p ** (2 * beta)
            return [
                CongruenceClaim(
                    family=family, alpha=alpha, p=p, beta=beta, t=t, s=s,
                    A=A, B=_offset(weight, A, 24, family),
                    relation=Relation.CONGRUENT_REFERENCE, modulus=2, reference=reference,
                )
            ]

        p = _require(p, "p", family)
        _check_prime(p, family)
        _check_legendre(symbol, p, label, family)
        A = p ** (2 * beta + 2)
        offset = _offset(weight, A, 24, family)
        return [
            CongruenceClaim(
                family=family, alpha=alpha, p=p, beta=beta, j=jj, t=t, s=s,
                A=A, B=p ** (2 * beta + 1) * jj + offset,
                relation=Relation.ZERO_MOD, modulus=2,
            )
            for jj in _j_values(j, p, family)
        ]

    if family in (Family.T33, Family.T34):
        alpha = _require(alpha, "alpha", family)
        base = 5 if family == Family.T33 else 7
        if alpha < 2:
            raise NotApplicableError(
                f"{family.value} needs alpha >= 2: alpha={alpha} gives t - s = 0, "
                f"i.e. f(q^{base}, q^0), outside the theta function's domain"
            )
        residues = (3, 4) if family == Family.T33 else (3, 4, 6)
        note = "printed index list 'i=,3,4,6' read as i in {3,4,6}" if base == 7 else None
        return [
            CongruenceClaim(
                family=family, alpha=alpha, i=i, t=base * alpha, s=base, A=base, B=i,
                relation=Relation.ZERO_MOD, modulus=2, note=note,
            )
            for i in residues
        ]

    if family == Family.T35a:
        return [
            CongruenceClaim(family=family, t=3, s=2, A=3, B=b, relation=Relation.EXACT_ZERO)
            for b in (1, 2)
        ]

    if family == Family.T35b:
        note = "printed form Q_3^2(2n) = p_o(n)" if as_printed else None
        return [
            CongruenceClaim(
                family=family, t=3, s=2, A=2 if as_printed else 3, B=0,
                relation=Relation.EQUALS_PO, note=note,
            )
        ]

    if family in (Family.T36a, Family.T36b):
        divisor = 12 if as_printed else 24
        note = "printed offset 5(p^(2b)-1)/12" if as_printed else None
        if family == Family.T36a:
            reference = {1: -1, 2: 3}
            if beta == 0 and p is None:
                return [
                    CongruenceClaim(
                        family=family, beta=0, t=4, s=2, A=1, B=0,
                        relation=Relation.CONGRUENT_REFERENCE, modulus=4, reference=reference,
                    )
                ]
            p = _require(p, "p", family)
            _check_prime(p, family)
            _check_legendre(-6, p, "-6", family)
            A = p ** (2 * beta)
            return [
                CongruenceClaim(
                    family=family, p=p, beta=beta, t=4, s=2, A=A,
                    B=_offset(5, A, divisor, family),
                    relation=Relation.CONGRUENT_REFERENCE, modulus=4, reference=reference,
                    note=note,
                )
            ]
        p = _require(p, "p", family)
        _check_prime(p, family)
        _check_legendre(-6, p, "-6", family)
        A = p ** (2 * beta + 2)
        offset = _offset(5, A, divisor, family)
        return [
            CongruenceClaim(
                family=family, p=p, beta=beta, j=jj, t=4, s=2,
                A=A, B=p ** (2 * beta + 1) * jj + offset,
                relation=Relation.ZERO_MOD, modulus=4, note=note,
            )
            for jj in _j_values(j, p, family)
        ]

    if family == Family.T37a:
        return [CongruenceClaim(family=family, t=4, s=3, A=2, B=1, relation=Relation.EXACT_ZERO)]
    if family == Family.T37b:
        return [CongruenceClaim(family=family, t=4, s=3, A=2, B=0, relation=Relation.EQUALS_PO)]
    if family == Family.T38:
        return [
            CongruenceClaim(
                family=family, t=6, s=2, A=1, B=0, relation=Relation.CONGRUENT_B6, modulus=2
            )
        ]
    if family == Family.T39:
        return [
            CongruenceClaim(
                family=family, t=12, s=2, A=3, B=2, relation=Relation.ZERO_MOD, modulus=2
            )
        ]
    raise SpecError(f"unknown theorem family {family!r}")


def instantiate(
    family: Family | str,
    *,
    alpha: int | None = None,
    p: int | None = None,
    beta: int = 0,
    j: int | None = None,
    as_printed: bool = False,
    conventions: Iterable[Convention] | None = None,
) -> list[CongruenceClaim]:
    """Concrete claims of one theorem family.

    With `conventions` unset each claim is read under the series convention;
    when s = t - s (mod t) and beta = 0, advisory copies under the squared and
    unsquared conventions follow each claim. An explicit `conventions` list
    yields exactly those readings, none advisory.

    Raises:
        SpecError: a required parameter is missing or malformed
        NotApplicableError: the parameters violate the theorem's hypotheses
    """
    family = Family(family)
    claims = _instantiate_primary(family, alpha, p, beta, j, as_printed)
    out: list[CongruenceClaim] = []
    for claim in claims:
        if conventions is not None:
            out += [claim.model_copy(update={"convention": c}) for c in conventions]
            continue
        out.append(claim)
        if claim.self_paired and not claim.beta:
            out += [
                claim.model_copy(update={"convention": c, "advisory": True})
                for c in ("squared", "unsquared")
            ]
    return out


# ----------------------------------------------------------------------
# Q tables
# ----------------------------------------------------------------------


def q_table(
    t: int, s: int, convention: Convention, trunc: int, modulus: int | None = None
) -> Series:
    """Q_t^s(0..trunc) under one convention, as a series."""
    if convention == "series":
        return qf.qts_series(t, s, trunc, modulus)
    if convention == "squared":
        return qf.qts_product(t, s, trunc, squared=True, modulus=modulus)
    if convention == "unsquared":
        counts = oracle.table_qts(PartitionSpec(t=t, s=s), trunc, modulus)
        return Series.make(counts, trunc, modulus)
    raise SpecError(f"unknown convention {convention!r}")


TableKey = tuple[int, int, str, int | None]


class SeriesTables:
    """Q tables keyed by (t, s, convention, modulus), each kept at its largest truncation.

    `prepare` builds every table a batch of claims needs before the claims
    are fanned out; afterwards lookups only read.
    """

    def __init__(self) -> None:
        self._tables: dict[TableKey, Series] = {}

    def get(
        self, t: int, s: int, convention: Convention, trunc: int, modulus: int | None
    ) -> Series:
        key = (t, s, convention, modulus)
        table = self._tables.get(key)
        if table is None or table.trunc < trunc:
            table = q_table(t, s, convention, trunc, modulus)
            self._tables[key] = table
        else:
            logger.debug("reusing Q_%d^%d %s table (mod %s)", t, s, convention, modulus)
        return table

    def prepare(
        self,
        plan: Iterable[tuple[CongruenceClaim, int]],
        max_trunc: int,
        threads: int | None = None,
    ) -> None:
        needs: dict[TableKey, int] = {}
        for claim, n_max in plan:
            trunc = claim.required_trunc(n_max)
            if trunc > max_trunc:
                continue
            key = (claim.t, claim.s, claim.convention, claim.modulus)
            needs[key] = max(needs.get(key, 0), trunc)
        logger.info("building %d shared Q tables", len(needs))
        run_ordered(
            lambda item: self.get(*item[0][:3], item[1], item[0][3]), needs.items(), threads
        )


# ----------------------------------------------------------------------
# Verification
# ----------------------------------------------------------------------


def _expected(claim: CongruenceClaim, n_max: int) -> list[int]:
    m = claim.modulus
    if claim.relation in (Relation.ZERO_MOD, Relation.EXACT_ZERO):
        return [0] * (n_max + 1)
    if claim.relation == Relation.EQUALS_PO:
        return oracle.table_po(n_max)
    if claim.relation == Relation.CONGRUENT_B6:
        return oracle.table_b_nondiv(n_max, 6, m)
    return qf.eta_quotient(claim.reference, n_max, m).to_list()


def verify_claim(
    claim: CongruenceClaim,
    n_max: int,
    max_trunc: int | None = None,
    tables: SeriesTables | None = None,
) -> VerificationReport:
    """Check the claim for 0 <= n <= n_max.

    A claim that needs more than `max_trunc` coefficients is reported as
    skipped rather than checked on a shorter range.
    """
    if n_max < 1:
        raise SpecError(f"n_max must be >= 1, got {n_max}")
    max_trunc = config.limits.max_trunc if max_trunc is None else max_trunc
    required = claim.required_trunc(n_max)
    fields = dict(
        id=claim.id,
        convention=claim.convention,
        trunc=required,
        modulus=claim.modulus,
        family=claim.family.value,
        t=claim.t,
        s=claim.s,
        A=claim.A,
        B=claim.B,
        n_max=n_max,
        advisory=claim.advisory,
    )
    if required > max_trunc:
        reason = TruncationCeilingError(required, max_trunc)
        logger.warning("skipping %s [%s]: %s", claim.id, claim.convention, reason)
        return VerificationReport(status="skipped", note=str(reason), **fields)

    start = time.perf_counter()
    tables = tables or SeriesTables()
    q = tables.get(claim.t, claim.s, claim.convention, required, claim.modulus)
    expected = _expected(claim, n_max)
    m = claim.modulus
    mismatch = None
    for n in range(n_max + 1):
        value = q[claim.A * n + claim.B]
        want = expected[n] if m is None else expected[n] % m
        if value != want:
            mismatch = Mismatch(n=n, lhs=value, rhs=want)
            break
    millis = (time.perf_counter() - start) * 1000

    if mismatch is None:
        status = "pass"
    else:
        status = "divergent" if claim.advisory else "fail"
    report = VerificationReport(
        status=status,
        first_mismatch=mismatch,
        millis=round(millis, 3),
        note=claim.note or claim.describe(),
        **fields,
    )
    logger.info("%s [%s] to n=%d: %s", claim.id, claim.convention, n_max, status)
    return report


def verify_base_congruence(
    family: Family | str,
    *,
    alpha: int | None = None,
    n_max: int | None = None,
    conventions: Iterable[Convention] | None = None,
    max_trunc: int | None = None,
) -> list[VerificationReport]:
    """The beta = 0 series congruences: Q_{2a}^a = f1 f_{2a}, Q_{4a}^a = f1 f_a (mod 2),
    Q_4^2 = psi(q) f2 (mod 4).

    `family` may name the zero-progression family (T31, T32, T36b) or its
    series form (T31a, T32a, T36a).
    """
    family = Family(family)
    series_form = {Family.T31: Family.T31a, Family.T32: Family.T32a, Family.T36b: Family.T36a}
    family = series_form.get(family, family)
    if family not in series_form.values():
        raise SpecError(f"{family.value} has no base congruence; use T31, T32 or T36")
    n_max = config.defaults.base_nmax if n_max is None else n_max
    claims = instantiate(family, alpha=alpha, beta=0, conventions=conventions)
    tables = SeriesTables()
    return [verify_claim(claim, n_max, max_trunc, tables) for claim in claims]


def verify_plan(
    plan: list[tuple[CongruenceClaim, int]],
    max_trunc: int | None = None,
    threads: int | None = None,
) -> list[VerificationReport]:
    """Verify (claim, n_max) pairs; shared tables are built first, reports keep plan order."""
    max_trunc = config.limits.max_trunc if max_trunc is None else max_trunc
    tables = SeriesTables()
    tables.prepare(plan, max_trunc, threads)
    return run_ordered(
        lambda item: verify_claim(item[0], item[1], max_trunc, tables), plan, threads
    )


def default_plan() -> list[tuple[CongruenceClaim, int]]:
    """The desk-scale instance set run by `verify all`."""
    d = config.defaults
    plan: list[tuple[CongruenceClaim, int]] = []

    def add(family: Family, n_max: int, **params: int) -> None:
        plan.extend((claim, n_max) for claim in instantiate(family, **params))

    for family, instances in (
        (Family.T31, ((1, 5), (2, 7), (2, 11))),
        (Family.T32, ((1, 7), (3, 5))),
    ):
        series_form = Family.T31a if family == Family.T31 else Family.T32a
        for alpha in sorted({a for a, _ in instances}):
            add(series_form, d.base_nmax, alpha=alpha)
        for alpha, p in instances:
            add(family, d.claim_nmax, alpha=alpha, p=p, beta=0)
            add(series_form, d.claim_nmax, alpha=alpha, p=p, beta=1)
            add(family, d.claim_nmax_lifted, alpha=alpha, p=p, beta=1)
    for alpha in (2, 3):
        add(Family.T33, d.claim_nmax, alpha=alpha)
    for alpha in (2, 3):
        add(Family.T34, d.claim_nmax, alpha=alpha)
    add(Family.T35a, d.family_nmax)
    add(Family.T35b, d.family_nmax)
    add(Family.T36a, d.base_nmax)
    add(Family.T36a, d.claim_nmax, p=13, beta=1)
    add(Family.T36b, d.claim_nmax, p=13, beta=0)
    add(Family.T37a, d.family_nmax)
    add(Family.T37b, d.family_nmax)
    add(Family.T38, d.family_nmax)
    add(Family.T39, d.family_nmax)
    return plan


def family_plan(family: Family | str) -> list[tuple[CongruenceClaim, int]]:
    """Default instances of the families `family` names (see `resolve_families`)."""
    name = family.value if isinstance(family, Family) else family
    wanted = set(resolve_families(name))
    return [(claim, n_max) for claim, n_max in default_plan() if claim.family in wanted]

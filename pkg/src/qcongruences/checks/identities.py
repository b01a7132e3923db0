"""Executable catalog of the theta-function identities and congruence tools.

Each catalog entry expands both sides of one identity to a truncation and
compares them coefficient by coefficient (after reduction for the congruence
entries). Parameterised entries are written like `L23_f1_pdissect(7)` or
`C_t7(1,2)`; any unique prefix of a name is accepted (`L23(7)`).
"""

from __future__ import annotations

import logging
import re
import time
from collections.abc import Callable
from dataclasses import dataclass

from pydantic import BaseModel, ConfigDict, model_validator
from sympy import isprime

from ..config import config
from ..errors import SpecError
from ..qseries import qfactory as qf
from ..qseries.qfactory import PochhammerSpec, ThetaSpec
from ..qseries.series import Series
from .reports import Mismatch, VerificationReport
from .runner import run_ordered

logger = logging.getLogger(__name__)

MIN_TRUNC = 10


# ----------------------------------------------------------------------
# Number theory helpers
# ----------------------------------------------------------------------


def _require_odd_prime(p: int) -> None:
    if p % 2 == 0 or not isprime(p):
        raise SpecError(f"{p} is not an odd prime")


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion."""
    _require_odd_prime(p)
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def pentagonal_sign_index(p: int) -> int:
    """The k in [-(p-1)/2, (p-1)/2] with (3k^2 + k)/2 = (p^2 - 1)/24, i.e. (+-p - 1)/6."""
    if p < 5:
        raise SpecError(f"p must be a prime >= 5, got {p}")
    return (p - 1) // 6 if p % 6 == 1 else (-p - 1) // 6


def _at_power(build: Callable[[int], Series], k: int, trunc: int) -> Series:
    """build evaluated at q^k, known to at least `trunc`."""
    return build(trunc // k).dilate(k).truncate(trunc)


# ----------------------------------------------------------------------
# p-dissections
# ----------------------------------------------------------------------


def f1_pdissection_rhs(p: int, trunc: int) -> Series:
    """Right-hand side of the p-dissection of f_1 for a prime p >= 5."""
    if p < 5 or not isprime(p):
        raise SpecError(f"the f_1 dissection needs a prime p >= 5, got {p}")
    sigma = pentagonal_sign_index(p)
    half = (p - 1) // 2
    total = Series.zero(trunc)
    for k in range(-half, half + 1):
        if k == sigma:
            continue
        offset = (3 * k * k + k) // 2
        if offset > trunc:
            continue
        spec = ThetaSpec(
            sign_a=-1,
            exp_a=(3 * p * p + (6 * k + 1) * p) // 2,
            sign_b=-1,
            exp_b=(3 * p * p - (6 * k + 1) * p) // 2,
        )
        term = qf.theta_sum(spec, trunc).shift(offset)
        total = total - term if k % 2 else total + term
    tail = qf.euler_f(p * p, trunc).shift((p * p - 1) // 24)
    return total - tail if sigma % 2 else total + tail


def psi_pdissection_rhs(p: int, trunc: int) -> Series:
    """Right-hand side of the p-dissection of psi(q) for an odd prime p."""
    if p == 2:
        raise SpecError("the psi dissection needs an odd prime")
    _require_odd_prime(p)
    total = Series.zero(trunc)
    for m in range((p - 3) // 2 + 1):
        offset = (m * m + m) // 2
        if offset > trunc:
            continue
        spec = ThetaSpec(
            exp_a=(p * p + (2 * m + 1) * p) // 2, exp_b=(p * p - (2 * m + 1) * p) // 2
        )
        total = total + qf.theta_sum(spec, trunc).shift(offset)
    tail = _at_power(lambda n: qf.special("psi", n), p * p, trunc)
    return total + tail.shift((p * p - 1) // 8)


class DissectionSupport(BaseModel):
    """Residues mod p hit by the non-tail terms of a dissection, and the tail's residue."""

    model_config = ConfigDict(frozen=True)

    p: int
    residues: list[int]
    tail_residue: int

    @property
    def disjoint(self) -> bool:
        return self.tail_residue not in self.residues


def dissection_support(p: int, kind: str = "f1") -> DissectionSupport:
    """Exhaustive residue check over the finite index range of a dissection."""
    if kind == "f1":
        sigma = pentagonal_sign_index(p)
        half = (p - 1) // 2
        residues = {(3 * k * k + k) // 2 % p for k in range(-half, half + 1) if k != sigma}
        tail = (p * p - 1) // 24 % p
    elif kind == "psi":
        _require_odd_prime(p)
        residues = {(m * m + m) // 2 % p for m in range((p - 3) // 2 + 1)}
        tail = (p * p - 1) // 8 % p
    else:
        raise SpecError(f"unknown dissection {kind!r}; expected f1 or psi")
    return DissectionSupport(p=p, residues=sorted(residues), tail_residue=tail)


# ----------------------------------------------------------------------
# Identity sides
# ----------------------------------------------------------------------

Sides = tuple[Series, Series]


def _sum_form(name: str) -> Callable[[int], Sides]:
    return lambda trunc: (qf.special(name, trunc), qf.special_sum_form(name, trunc))


def _euler_pd_po(trunc: int) -> Sides:
    distinct = qf.pochhammer(PochhammerSpec(sign=-1, start=1, step=1), trunc)
    odd = qf.pochhammer(PochhammerSpec(sign=1, start=1, step=2), trunc)
    return distinct, odd.invert()


def _f_qq2(trunc: int) -> Sides:
    lhs = qf.theta_sum(ThetaSpec(exp_a=1, exp_b=2), trunc)
    rhs = _at_power(lambda n: qf.special("phi_neg", n), 3, trunc) / qf.special("chi_neg", trunc)
    return lhs, rhs


def _f_qq5(trunc: int) -> Sides:
    lhs = qf.theta_product(ThetaSpec(exp_a=1, exp_b=5), trunc)
    rhs = _at_power(lambda n: qf.special("psi_neg", n), 3, trunc) * qf.special("chi", trunc)
    return lhs, rhs


def _septic(trunc: int) -> Sides:
    a, b, c = (x.dilate(7).truncate(trunc) for x in qf.septic_abc(trunc // 7))
    q = Series.monomial(1, trunc)
    inner = b / c - q * (a / b) - Series.monomial(2, trunc) + (c / a).shift(5)
    return qf.euler_f(1, trunc), qf.euler_f(49, trunc) * inner


def _quintic(trunc: int) -> Sides:
    r = _at_power(qf.rr_quotient, 5, trunc)
    inner = r - Series.monomial(1, trunc) - r.invert().shift(2)
    return qf.euler_f(1, trunc), qf.euler_f(25, trunc) * inner


def _cubic(trunc: int) -> Sides:
    lhs = qf.euler_f(1, trunc) ** 3
    rhs = _at_power(qf.cubic_a, 3, trunc) - (qf.euler_f(9, trunc) ** 3).scale(3).shift(1)
    return lhs, rhs


def _binomial_mod2(r: int, m: int) -> Callable[[int], Sides]:
    return lambda trunc: (qf.euler_f(r, trunc) ** (2 * m), qf.euler_f(2 * r, trunc) ** m)


def _binomial_mod4(r: int, m: int) -> Callable[[int], Sides]:
    return lambda trunc: (qf.euler_f(r, trunc) ** (4 * m), qf.euler_f(2 * r, trunc) ** (2 * m))


def _f_qq2_mod2(trunc: int) -> Sides:
    return qf.theta_sum(ThetaSpec(exp_a=1, exp_b=2), trunc), qf.euler_f(1, trunc)


# ----------------------------------------------------------------------
# Registry
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class _Entry:
    name: str
    statement: str
    sides: Callable[..., Callable[[int], Sides]]
    arity: int = 0
    modulus: int | None = None
    trunc: int | None = None
    validate: Callable[..., None] | None = None


def _prime_at_least_5(p: int) -> None:
    if p < 5 or not isprime(p):
        raise SpecError(f"L23 needs a prime p >= 5, got {p}")


def _positive(r: int, m: int) -> None:
    if r < 1 or m < 1:
        raise SpecError(f"need r, m >= 1, got r={r}, m={m}")


_REGISTRY: dict[str, _Entry] = {
    e.name: e
    for e in (
        _Entry("E_phi", "phi(q) = f(q,q) = f2^5/(f1^2 f4^2)", lambda: _sum_form("phi")),
        _Entry("E_psi", "psi(q) = f(q,q^3) = f2^2/f1", lambda: _sum_form("psi")),
        _Entry("E_f_neg", "f(-q) = f(-q,-q^2) = f1", lambda: _sum_form("f_neg")),
        _Entry("E_phi_neg", "phi(-q) = f1^2/f2", lambda: _sum_form("phi_neg")),
        _Entry("E_psi_neg", "psi(-q) = f1 f4/f2", lambda: _sum_form("psi_neg")),
        _Entry("E_chi", "chi(q) = (-q;q^2) = f2^2/(f1 f4)", lambda: _sum_form("chi")),
        _Entry("E_chi_neg", "chi(-q) = (q;q^2) = f1/f2", lambda: _sum_form("chi_neg")),
        _Entry("E_euler_pd_po", "(-q;q) = 1/(q;q^2)", lambda: _euler_pd_po),
        _Entry("L21_f_qq2", "f(q,q^2) = phi(-q^3)/chi(-q)", lambda: _f_qq2),
        _Entry("L22_f_qq5", "f(q,q^5) = psi(-q^3) chi(q)", lambda: _f_qq5),
        _Entry(
            "L23_f1_pdissect",
            "p-dissection of f1 with tail (-1)^k q^((p^2-1)/24) f_{p^2}",
            lambda p: lambda trunc: (qf.euler_f(1, trunc), f1_pdissection_rhs(p, trunc)),
            arity=1,
            validate=_prime_at_least_5,
        ),
        _Entry(
            "L24_psi_pdissect",
            "p-dissection of psi(q) with tail q^((p^2-1)/8) psi(q^{p^2})",
            lambda p: lambda trunc: (qf.special("psi", trunc), psi_pdissection_rhs(p, trunc)),
            arity=1,
            validate=_require_odd_prime,
        ),
        _Entry(
            "L25_septic",
            "f1 = f49 (B(q^7)/C(q^7) - q A(q^7)/B(q^7) - q^2 + q^5 C(q^7)/A(q^7))",
            lambda: _septic,
            trunc=200,
        ),
        _Entry(
            "L26_quintic", "f1 = f25 (R(q^5) - q - q^2/R(q^5))", lambda: _quintic, trunc=150
        ),
        _Entry("L27_cubic", "f1^3 = a(q^3) - 3q f9^3", lambda: _cubic, trunc=200),
        _Entry(
            "C_t7",
            "f_r^(2m) = f_(2r)^m (mod 2)",
            _binomial_mod2,
            arity=2,
            modulus=2,
            trunc=200,
            validate=_positive,
        ),
        _Entry(
            "C_v7",
            "f_r^(4m) = f_(2r)^(2m) (mod 4)",
            _binomial_mod4,
            arity=2,
            modulus=4,
            trunc=200,
            validate=_positive,
        ),
        _Entry(
            "L28_fqq2_mod2", "f(q,q^2) = f1 (mod 2)", lambda: _f_qq2_mod2, modulus=2, trunc=200
        ),
    )
}

_ID_PATTERN = re.compile(r"^\s*([A-Za-z0-9_]+?)\s*(?:\(([^)]*)\))?\s*$")


def _resolve(name: str) -> _Entry:
    if name in _REGISTRY:
        return _REGISTRY[name]
    matches = [e for key, e in _REGISTRY.items() if key.startswith(name)]
    if len(matches) != 1:
        known = ", ".join(_REGISTRY)
        raise SpecError(f"unknown or ambiguous identity {name!r}; known: {known}")
    return matches[0]


class IdentityId(BaseModel):
    """A catalog name plus its integer parameters."""

    model_config = ConfigDict(frozen=True)

    name: str
    params: tuple[int, ...] = ()

    @model_validator(mode="after")
    def _known_and_valid(self) -> IdentityId:
        entry = _REGISTRY.get(self.name)
        if entry is None:
            raise ValueError(f"unknown identity {self.name!r}")
        if len(self.params) != entry.arity:
            raise ValueError(f"{self.name} takes {entry.arity} parameter(s), got {self.params}")
        if entry.validate is not None:
            entry.validate(*self.params)
        return self

    @classmethod
    def parse(cls, text: str) -> IdentityId:
        match = _ID_PATTERN.match(text)
        if match is None:
            raise SpecError(f"cannot parse identity id {text!r}")
        entry = _resolve(match.group(1))
        raw = match.group(2)
        try:
            params = tuple(int(x) for x in raw.split(",")) if raw else ()
        except ValueError:
            raise SpecError(f"identity parameters must be integers: {raw!r}") from None
        if len(params) != entry.arity:
            raise SpecError(f"{entry.name} takes {entry.arity} parameter(s), got {len(params)}")
        if entry.validate is not None:
            entry.validate(*params)
        return cls(name=entry.name, params=params)

    @property
    def entry(self) -> _Entry:
        return _REGISTRY[self.name]

    def __str__(self) -> str:
        if not self.params:
            return self.name
        return f"{self.name}({','.join(str(x) for x in self.params)})"


def catalog() -> list[IdentityId]:
    """Every identity checked by `verify all`, in catalog order."""
    ids: list[IdentityId] = []
    for entry in _REGISTRY.values():
        if entry.name == "L23_f1_pdissect":
            ids += [IdentityId(name=entry.name, params=(p,)) for p in (5, 7, 11, 13)]
        elif entry.name == "L24_psi_pdissect":
            ids += [IdentityId(name=entry.name, params=(p,)) for p in (3, 5, 7)]
        elif entry.arity == 2:
            pairs = ((1, 1), (1, 2), (2, 1), (3, 2))
            ids += [IdentityId(name=entry.name, params=rm) for rm in pairs]
        else:
            ids.append(IdentityId(name=entry.name))
    return ids


def describe() -> list[dict[str, str | int | None]]:
    return [
        {"name": e.name, "statement": e.statement, "parameters": e.arity, "modulus": e.modulus}
        for e in _REGISTRY.values()
    ]


# ----------------------------------------------------------------------
# Verification
# ----------------------------------------------------------------------


def verify(
    identity: IdentityId | str, trunc: int | None = None, perturb: int | None = None
) -> VerificationReport:
    """Expand both sides of an identity and compare them exactly up to `trunc`.

    Args:
        identity: catalog id or its text form
        trunc: truncation order; defaults to the entry's own default
        perturb: add q^perturb to the right-hand side (negative control)

    Returns:
        VerificationReport with status pass or fail
    """
    if isinstance(identity, str):
        identity = IdentityId.parse(identity)
    entry = identity.entry
    if trunc is None:
        trunc = entry.trunc or config.defaults.identity_trunc
    if trunc < MIN_TRUNC:
        raise SpecError(f"identity checks need trunc >= {MIN_TRUNC}, got {trunc}")
    if perturb is not None and not 0 <= perturb <= trunc:
        raise SpecError(f"perturbation index must lie in [0, {trunc}], got {perturb}")

    start = time.perf_counter()
    lhs, rhs = entry.sides(*identity.params)(trunc)
    lhs, rhs = lhs.truncate(trunc), rhs.truncate(trunc)
    if entry.modulus is not None:
        lhs, rhs = lhs.reduce_mod(entry.modulus), rhs.reduce_mod(entry.modulus)
    if perturb is not None:
        rhs = rhs + Series.monomial(perturb, trunc, modulus=rhs.modulus)
    result = lhs.equal_upto(rhs, trunc)
    millis = (time.perf_counter() - start) * 1000

    mismatch = None
    if not result:
        mismatch = Mismatch(n=result.index, lhs=result.lhs, rhs=result.rhs)
    report = VerificationReport(
        id=str(identity),
        trunc=trunc,
        modulus=entry.modulus,
        status="pass" if result else "fail",
        first_mismatch=mismatch,
        millis=round(millis, 3),
        note=entry.statement,
    )
    logger.info("identity %s to %d: %s", report.id, trunc, report.status)
    return report


def verify_catalog(
    ids: list[IdentityId] | None = None, trunc: int | None = None, threads: int | None = None
) -> list[VerificationReport]:
    """Verify several identities; reports come back in the order of `ids`."""
    ids = catalog() if ids is None else ids
    return run_ordered(lambda identity: verify(identity, trunc), ids, threads)

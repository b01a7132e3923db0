"""Constructors for the named q-series objects.

Pochhammer products, the eta products f_k = (q^k; q^k)_inf, Ramanujan's general
theta function f(a, b) in sum and product form, the classical special theta
functions, the Rogers-Ramanujan quotient R(q), the septic theta triple A/B/C,
the cubic a(q), and the generating functions of Q_t^s(n).
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Mapping
from math import isqrt
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import SpecError
from .series import Series

logger = logging.getLogger(__name__)

Sign = Literal[-1, 1]

SPECIAL_NAMES = ("phi", "psi", "f_neg", "chi", "phi_neg", "psi_neg", "chi_neg")


class ThetaSpec(BaseModel):
    """f(sign_a * q^exp_a, sign_b * q^exp_b)."""

    model_config = ConfigDict(frozen=True)

    sign_a: Sign = 1
    exp_a: int = Field(ge=0)
    sign_b: Sign = 1
    exp_b: int = Field(ge=0)

    @model_validator(mode="after")
    def _positive_base(self) -> ThetaSpec:
        if self.exp_a + self.exp_b < 1:
            raise ValueError("exp_a + exp_b must be >= 1 for f(a, b) to be a formal series")
        return self

    @property
    def base_exponent(self) -> int:
        return self.exp_a + self.exp_b

    def __str__(self) -> str:
        a = "-" if self.sign_a < 0 else ""
        b = "-" if self.sign_b < 0 else ""
        return f"f({a}q^{self.exp_a}, {b}q^{self.exp_b})"


class PochhammerSpec(BaseModel):
    """(sign * q^start; q^step)_inf = prod_{n >= 0} (1 - sign * q^(start + n*step))."""

    model_config = ConfigDict(frozen=True)

    sign: Sign = 1
    start: int = Field(ge=0)
    step: int = Field(ge=1)

    @model_validator(mode="after")
    def _not_identically_zero(self) -> PochhammerSpec:
        if self.start == 0 and self.sign == 1:
            raise ValueError("(1; q^k)_inf has the factor (1 - 1) and is identically zero")
        return self


# ----------------------------------------------------------------------
# Factor-by-factor expansion
# ----------------------------------------------------------------------


def _factors(spec: PochhammerSpec, trunc: int) -> Iterator[tuple[int, int]]:
    """Yield (c, e) for each factor (1 + c q^e) with e <= trunc."""
    e = spec.start
    while e <= trunc:
        yield -spec.sign, e
        e += spec.step


def _multiply_binomial(coeffs: list[int], c: int, e: int, modulus: int | None) -> None:
    # in place: coeffs *= (1 + c q^e); the right-hand side reads only old values
    if modulus is None:
        coeffs[e:] = [x + c * y for x, y in zip(coeffs[e:], coeffs)]
    else:
        coeffs[e:] = [(x + c * y) % modulus for x, y in zip(coeffs[e:], coeffs)]


def _divide_binomial(coeffs: list[int], c: int, e: int, modulus: int | None) -> None:
    # in place: coeffs /= (1 + c q^e), block by block so each block sees the updated one before it
    if e < 1:
        raise SpecError("cannot divide by a constant Pochhammer factor")
    n = len(coeffs)
    for lo in range(e, n, e):
        block = zip(coeffs[lo : lo + e], coeffs[lo - e : lo])
        if modulus is None:
            coeffs[lo : lo + e] = [x - c * y for x, y in block]
        else:
            coeffs[lo : lo + e] = [(x - c * y) % modulus for x, y in block]


def _expand(
    specs: Iterable[PochhammerSpec],
    trunc: int,
    modulus: int | None = None,
    divide: Iterable[PochhammerSpec] = (),
) -> Series:
    coeffs = [1] + [0] * trunc
    for spec in specs:
        for c, e in _factors(spec, trunc):
            _multiply_binomial(coeffs, c, e, modulus)
    for spec in divide:
        for c, e in _factors(spec, trunc):
            _divide_binomial(coeffs, c, e, modulus)
    return Series.make(coeffs, trunc, modulus)


def _check_trunc(trunc: int) -> None:
    if trunc < 0:
        raise SpecError(f"truncation must be >= 0, got {trunc}")


# ----------------------------------------------------------------------
# Pochhammer symbols and eta products
# ----------------------------------------------------------------------


def pochhammer(spec: PochhammerSpec, trunc: int, modulus: int | None = None) -> Series:
    """Truncated expansion of (sign * q^start; q^step)_inf."""
    _check_trunc(trunc)
    return _expand([spec], trunc, modulus)


def euler_f(k: int, trunc: int, modulus: int | None = None) -> Series:
    """f_k = (q^k; q^k)_inf, expanded by Euler's pentagonal number theorem."""
    if k < 1:
        raise SpecError(f"f_k needs k >= 1, got {k}")
    _check_trunc(trunc)
    coeffs = [0] * (trunc + 1)
    coeffs[0] = 1
    n = 1
    while True:
        lower = k * n * (3 * n - 1) // 2
        if lower > trunc:
            break
        sign = -1 if n % 2 else 1
        coeffs[lower] += sign
        upper = lower + k * n
        if upper <= trunc:
            coeffs[upper] += sign
        n += 1
    return Series.make(coeffs, trunc, modulus)


def eta_quotient(
    exponents: Mapping[int, int], trunc: int, modulus: int | None = None
) -> Series:
    """prod_k f_k^{e_k}; positive powers are multiplied in before dividing."""
    _check_trunc(trunc)
    result = Series.one(trunc, modulus)
    for k, e in sorted(exponents.items(), key=lambda item: -item[1]):
        if e == 0:
            continue
        f = euler_f(k, trunc, modulus)
        for _ in range(abs(e)):
            result = result * f if e > 0 else result / f
    return result


# ----------------------------------------------------------------------
# Ramanujan's general theta function
# ----------------------------------------------------------------------


def theta_sum(spec: ThetaSpec, trunc: int, modulus: int | None = None) -> Series:
    """f(a, b) = sum_{n in Z} a^{n(n+1)/2} b^{n(n-1)/2}."""
    _check_trunc(trunc)
    x, y = spec.exp_a, spec.exp_b
    bound = 2 + 2 * isqrt(2 * trunc // spec.base_exponent)
    coeffs = [0] * (trunc + 1)
    for n in range(-bound, bound + 1):
        tri_a = n * (n + 1) // 2
        tri_b = n * (n - 1) // 2
        e = x * tri_a + y * tri_b
        if e > trunc:
            continue
        sign = 1
        if spec.sign_a < 0 and tri_a % 2:
            sign = -sign
        if spec.sign_b < 0 and tri_b % 2:
            sign = -sign
        coeffs[e] += sign
    return Series.make(coeffs, trunc, modulus)


def _theta_factor_specs(spec: ThetaSpec) -> list[PochhammerSpec] | None:
    """Pochhammer factors of (-a; ab)(-b; ab)(ab; ab), or None when a factor vanishes."""
    x, y, k = spec.exp_a, spec.exp_b, spec.base_exponent
    sa, sb = spec.sign_a, spec.sign_b
    # (1 + a) = 0 or (1 + b) = 0 kills the whole product
    if (x == 0 and sa < 0) or (y == 0 and sb < 0):
        return None
    if sa * sb > 0:
        return [
            PochhammerSpec(sign=-sa, start=x, step=k),
            PochhammerSpec(sign=-sb, start=y, step=k),
            PochhammerSpec(sign=1, start=k, step=k),
        ]
    # ab = -q^k: split each product by the parity of n
    return [
        PochhammerSpec(sign=-sa, start=x, step=2 * k),
        PochhammerSpec(sign=sa, start=x + k, step=2 * k),
        PochhammerSpec(sign=-sb, start=y, step=2 * k),
        PochhammerSpec(sign=sb, start=y + k, step=2 * k),
        PochhammerSpec(sign=-1, start=k, step=2 * k),
        PochhammerSpec(sign=1, start=2 * k, step=2 * k),
    ]


def theta_product(spec: ThetaSpec, trunc: int, modulus: int | None = None) -> Series:
    """f(a, b) = (-a; ab)_inf (-b; ab)_inf (ab; ab)_inf (Jacobi triple product)."""
    _check_trunc(trunc)
    factors = _theta_factor_specs(spec)
    if factors is None:
        return Series.zero(trunc, modulus)
    return _expand(factors, trunc, modulus)


# ----------------------------------------------------------------------
# Special theta functions
# ----------------------------------------------------------------------

_SPECIAL_ETA: dict[str, dict[int, int]] = {
    "phi": {2: 5, 1: -2, 4: -2},
    "psi": {2: 2, 1: -1},
    "f_neg": {1: 1},
    "chi": {2: 2, 1: -1, 4: -1},
    "phi_neg": {1: 2, 2: -1},
    "psi_neg": {1: 1, 4: 1, 2: -1},
    "chi_neg": {1: 1, 2: -1},
}


def special(name: str, trunc: int, modulus: int | None = None) -> Series:
    """phi, psi, f(-q), chi and their q -> -q versions from their eta-quotient forms."""
    try:
        exponents = _SPECIAL_ETA[name]
    except KeyError:
        raise SpecError(
            f"unknown special function {name!r}; expected one of {', '.join(SPECIAL_NAMES)}"
        ) from None
    return eta_quotient(exponents, trunc, modulus)


def special_sum_form(name: str, trunc: int, modulus: int | None = None) -> Series:
    """The same functions from their theta-series or Pochhammer definitions."""
    if name == "chi":
        return pochhammer(PochhammerSpec(sign=-1, start=1, step=2), trunc, modulus)
    if name == "chi_neg":
        return pochhammer(PochhammerSpec(sign=1, start=1, step=2), trunc, modulus)
    specs = {
        "phi": ThetaSpec(exp_a=1, exp_b=1),
        "psi": ThetaSpec(exp_a=1, exp_b=3),
        "f_neg": ThetaSpec(sign_a=-1, exp_a=1, sign_b=-1, exp_b=2),
        "phi_neg": ThetaSpec(sign_a=-1, exp_a=1, sign_b=-1, exp_b=1),
        "psi_neg": ThetaSpec(sign_a=-1, exp_a=1, sign_b=-1, exp_b=3),
    }
    if name not in specs:
        raise SpecError(f"unknown special function {name!r}")
    return theta_sum(specs[name], trunc, modulus)


# ----------------------------------------------------------------------
# Auxiliary functions of the dissection identities
# ----------------------------------------------------------------------


def rr_quotient(trunc: int, modulus: int | None = None) -> Series:
    """R(q) = (q^2; q^5)(q^3; q^5) / ((q; q^5)(q^4; q^5))."""
    _check_trunc(trunc)
    return _expand(
        [PochhammerSpec(start=2, step=5), PochhammerSpec(start=3, step=5)],
        trunc,
        modulus,
        divide=[PochhammerSpec(start=1, step=5), PochhammerSpec(start=4, step=5)],
    )


def septic_abc(trunc: int, modulus: int | None = None) -> tuple[Series, Series, Series]:
    """A(q) = f(-q^3, -q^4), B(q) = f(-q^2, -q^5), C(q) = f(-q, -q^6)."""
    return tuple(
        theta_product(ThetaSpec(sign_a=-1, exp_a=x, sign_b=-1, exp_b=7 - x), trunc, modulus)
        for x in (3, 2, 1)
    )


def cubic_a(trunc: int, modulus: int | None = None) -> Series:
    """a(q) = f2^6 f3 / (f1^2 f6^2) + 3q f1^2 f6^6 / (f2^2 f3^3)."""
    first = eta_quotient({2: 6, 3: 1, 1: -2, 6: -2}, trunc, modulus)
    second = eta_quotient({1: 2, 6: 6, 2: -2, 3: -3}, trunc, modulus)
    return first + second.scale(3).shift(1)


# ----------------------------------------------------------------------
# Generating functions of Q_t^s(n)
# ----------------------------------------------------------------------


def _check_ts(t: int, s: int) -> None:
    if not 1 <= s < t:
        raise SpecError(f"need 1 <= s < t, got t={t}, s={s}")


def is_self_paired(t: int, s: int) -> bool:
    """True when s and t - s fall in the same residue class mod t."""
    return (2 * s) % t == 0


def qts_series(t: int, s: int, trunc: int, modulus: int | None = None) -> Series:
    """f2 f_t / (f1 f(q^s, q^(t-s)))."""
    _check_ts(t, s)
    _check_trunc(trunc)
    numerator = euler_f(2, trunc, modulus) * euler_f(t, trunc, modulus)
    theta = theta_sum(ThetaSpec(exp_a=s, exp_b=t - s), trunc, modulus)
    result = numerator / euler_f(1, trunc, modulus) / theta
    logger.debug("expanded Q_%d^%d series to order %d (modulus %s)", t, s, trunc, modulus)
    return result


def qts_product(
    t: int, s: int, trunc: int, squared: bool, modulus: int | None = None
) -> Series:
    """(-q; q)_inf / ((-q^s; q^t)_inf (-q^(t-s); q^t)_inf).

    When s = t - s (mod t) the two denominator factors coincide; `squared`
    selects whether the shared factor is divided out twice (the literal
    quotient) or once (the combinatorial count).
    """
    _check_ts(t, s)
    _check_trunc(trunc)
    denominators = [PochhammerSpec(sign=-1, start=s, step=t)]
    if squared or not is_self_paired(t, s):
        denominators.append(PochhammerSpec(sign=-1, start=t - s, step=t))
    return _expand([PochhammerSpec(sign=-1, start=1, step=1)], trunc, modulus, denominators)


# ----------------------------------------------------------------------
# Name-based dispatch for the command-line and tool surfaces
# ----------------------------------------------------------------------


def build(
    kind: str,
    trunc: int,
    *,
    name: str | None = None,
    t: int | None = None,
    s: int | None = None,
    convention: str = "series",
    k: int | None = None,
    theta: ThetaSpec | None = None,
    modulus: int | None = None,
) -> Series:
    """Build a named series: qts, special, eta, theta, rr or cubic-a."""
    if kind == "qts":
        if t is None or s is None:
            raise SpecError("qts needs both t and s")
        if convention == "series":
            return qts_series(t, s, trunc, modulus)
        if convention in ("squared", "unsquared"):
            return qts_product(t, s, trunc, squared=convention == "squared", modulus=modulus)
        raise SpecError(f"unknown convention {convention!r}")
    if kind == "special":
        if name is None:
            raise SpecError(f"special needs a name: {', '.join(SPECIAL_NAMES)}")
        return special(name, trunc, modulus)
    if kind == "eta":
        if k is None:
            raise SpecError("eta needs k")
        return euler_f(k, trunc, modulus)
    if kind == "theta":
        if theta is None:
            raise SpecError("theta needs exponents")
        return theta_sum(theta, trunc, modulus)
    if kind == "rr":
        return rr_quotient(trunc, modulus)
    if kind == "cubic-a":
        return cubic_a(trunc, modulus)
    raise SpecError(f"unknown series kind {kind!r}")

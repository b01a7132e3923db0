"""Truncated formal power series in q with exact or modular integer coefficients.

A `Series` stores the coefficients of q^0 .. q^trunc. Coefficients are Python
integers (arbitrary precision) or, when `modulus` is set, canonical residues in
[0, modulus). Every operation returns a new series; binary operations work at
the smaller of the two truncations.

Multiplication and division skip zero coefficients of the sparser operand, so
products and quotients involving eta products and theta series (which have
O(sqrt(N)) nonzero terms up to q^N) cost O(N * sqrt(N)) instead of O(N^2).
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from math import gcd

from ..errors import ModulusMismatchError, NotInvertibleError, SpecError


@dataclass(frozen=True, slots=True)
class Comparison:
    """Outcome of `Series.equal_upto`."""

    equal: bool
    index: int | None = None
    lhs: int | None = None
    rhs: int | None = None

    def __bool__(self) -> bool:
        return self.equal


@dataclass(frozen=True, slots=True, repr=False)
class Series:
    """Immutable truncated power series."""

    coeffs: tuple[int, ...]
    modulus: int | None = None

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise SpecError("a series stores at least its constant coefficient")
        m = self.modulus
        if m is not None:
            if m < 2:
                raise SpecError(f"modulus must be >= 2, got {m}")
            if any(not 0 <= c < m for c in self.coeffs):
                object.__setattr__(self, "coeffs", tuple(c % m for c in self.coeffs))

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def make(cls, coeffs: Iterable[int], trunc: int, modulus: int | None = None) -> Series:
        """Build a series from leading coefficients, zero-filling up to `trunc`."""
        if trunc < 0:
            raise SpecError(f"truncation must be >= 0, got {trunc}")
        if modulus is not None and modulus < 2:
            raise SpecError(f"modulus must be >= 2, got {modulus}")
        values = [int(c) for c in coeffs][: trunc + 1]
        values.extend([0] * (trunc + 1 - len(values)))
        return cls._build(values, modulus)

    @classmethod
    def zero(cls, trunc: int, modulus: int | None = None) -> Series:
        return cls.make((), trunc, modulus)

    @classmethod
    def one(cls, trunc: int, modulus: int | None = None) -> Series:
        return cls.make((1,), trunc, modulus)

    @classmethod
    def monomial(
        cls, power: int, trunc: int, coefficient: int = 1, modulus: int | None = None
    ) -> Series:
        """coefficient * q^power, truncated (zero if power > trunc)."""
        if power < 0:
            raise SpecError(f"power must be >= 0, got {power}")
        values = [0] * (trunc + 1)
        if power <= trunc:
            values[power] = coefficient
        return cls.make(values, trunc, modulus)

    @classmethod
    def _build(cls, values: list[int], modulus: int | None) -> Series:
        return cls(tuple(values), modulus)

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------

    @property
    def trunc(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, index: int) -> int:
        """Coefficient of q^index; only 0 <= index <= trunc is known."""
        if not 0 <= index <= self.trunc:
            raise IndexError(f"coefficient {index} outside 0..{self.trunc}")
        return self.coeffs[index]

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, None for the zero series."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self) -> str:
        shown = ", ".join(str(c) for c in self.coeffs[:12])
        more = ", ..." if len(self.coeffs) > 12 else ""
        mod = f", mod {self.modulus}" if self.modulus is not None else ""
        return f"Series([{shown}{more}], trunc={self.trunc}{mod})"

    # ------------------------------------------------------------------
    # Ring operations
    # ------------------------------------------------------------------

    def _check(self, other: Series) -> None:
        if self.modulus != other.modulus:
            raise ModulusMismatchError(
                f"modulus mismatch: {self.modulus} vs {other.modulus}"
            )

    def __add__(self, other: Series) -> Series:
        self._check(other)
        return self._build([a + b for a, b in zip(self.coeffs, other.coeffs)], self.modulus)

    def __sub__(self, other: Series) -> Series:
        self._check(other)
        return self._build([a - b for a, b in zip(self.coeffs, other.coeffs)], self.modulus)

    def __neg__(self) -> Series:
        return self._build([-c for c in self.coeffs], self.modulus)

    def scale(self, factor: int) -> Series:
        return self._build([factor * c for c in self.coeffs], self.modulus)

    def __mul__(self, other: Series | int) -> Series:
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        n = min(self.trunc, other.trunc)
        left = self.coeffs[: n + 1]
        right = other.coeffs[: n + 1]
        left_nz = [(i, c) for i, c in enumerate(left) if c]
        right_nz = [(j, c) for j, c in enumerate(right) if c]
        if len(left_nz) > len(right_nz):
            left_nz, right_nz, right = right_nz, left_nz, left

        out = [0] * (n + 1)
        if 4 * len(right_nz) > n + 1:
            # dense partner: one shifted row per nonzero term of the sparse side
            for i, x in left_nz:
                out[i:] = [o + x * y for o, y in zip(out[i:], right)]
        else:
            for i, x in left_nz:
                limit = n - i
                for j, y in right_nz:
                    if j > limit:
                        break
                    out[i + j] += x * y
        return self._build(out, self.modulus)

    def __rmul__(self, other: int) -> Series:
        return self.scale(other)

    def _unit_inverse(self, c: int) -> int:
        if self.modulus is None:
            if c not in (1, -1):
                raise NotInvertibleError(f"constant term {c} is not a unit over the integers")
            return c
        if gcd(c, self.modulus) != 1:
            raise NotInvertibleError(
                f"constant term {c} is not invertible modulo {self.modulus}"
            )
        return pow(c, -1, self.modulus)

    def __truediv__(self, other: Series) -> Series:
        """Quotient by a series with unit constant term.

        Solves other * result = self coefficient by coefficient:
        r_n = c0^-1 * (a_n - sum_{i=1..n} c_i r_{n-i}); only nonzero c_i are visited.
        """
        self._check(other)
        n = min(self.trunc, other.trunc)
        inv0 = other._unit_inverse(other.coeffs[0])
        taps = [(i, c) for i, c in enumerate(other.coeffs[1 : n + 1], start=1) if c]
        m = self.modulus
        num = self.coeffs
        out: list[int] = []
        for k in range(n + 1):
            acc = num[k]
            for i, c in taps:
                if i > k:
                    break
                acc -= c * out[k - i]
            acc *= inv0
            if m is not None:
                acc %= m
            out.append(acc)
        return Series(tuple(out), m)

    def invert(self) -> Series:
        return Series.one(self.trunc, self.modulus) / self

    def __pow__(self, exponent: int) -> Series:
        if exponent < 0:
            return self.invert() ** (-exponent)
        result = Series.one(self.trunc, self.modulus)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    # ------------------------------------------------------------------
    # Substitutions and sections
    # ------------------------------------------------------------------

    def dilate(self, k: int) -> Series:
        """Substitute q -> q^k.

        The result is known exactly up to index k*trunc + k - 1, since the
        indices strictly between multiples of k are zero by construction.
        """
        if k < 1:
            raise SpecError(f"dilation factor must be >= 1, got {k}")
        out = [0] * (k * (self.trunc + 1))
        out[::k] = self.coeffs
        return Series(tuple(out), self.modulus)

    def extract_progression(self, m: int, r: int) -> Series:
        """Series whose n-th coefficient is the (m*n + r)-th coefficient of self."""
        if m < 1:
            raise SpecError(f"progression modulus must be >= 1, got {m}")
        if not 0 <= r < m:
            raise SpecError(f"residue must satisfy 0 <= r < {m}, got {r}")
        if r > self.trunc:
            raise SpecError(f"residue {r} exceeds truncation {self.trunc}")
        return Series(self.coeffs[r::m], self.modulus)

    def shift(self, k: int) -> Series:
        """Multiply by q^k at the same truncation."""
        if k < 0:
            raise SpecError(f"shift must be >= 0, got {k}")
        if k > self.trunc:
            return Series.zero(self.trunc, self.modulus)
        return Series((0,) * k + self.coeffs[: self.trunc + 1 - k], self.modulus)

    def truncate(self, n: int) -> Series:
        if not 0 <= n <= self.trunc:
            raise SpecError(f"cannot truncate a series of order {self.trunc} to {n}")
        return Series(self.coeffs[: n + 1], self.modulus)

    # ------------------------------------------------------------------
    # Reduction and comparison
    # ------------------------------------------------------------------

    def reduce_mod(self, m: int) -> Series:
        if m < 2:
            raise SpecError(f"modulus must be >= 2, got {m}")
        if self.modulus is not None and self.modulus % m:
            raise SpecError(f"cannot reduce a series mod {self.modulus} to mod {m}")
        return self._build(list(self.coeffs), m)

    def equal_upto(self, other: Series, n: int) -> Comparison:
        self._check(other)
        if n < 0:
            raise SpecError(f"comparison order must be >= 0, got {n}")
        if n > self.trunc or n > other.trunc:
            raise SpecError(
                f"comparison order {n} exceeds truncation {min(self.trunc, other.trunc)}"
            )
        for i in range(n + 1):
            if self.coeffs[i] != other.coeffs[i]:
                return Comparison(False, i, self.coeffs[i], other.coeffs[i])
        return Comparison(True)

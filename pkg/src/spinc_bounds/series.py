"""Truncated power series and Laurent series with exact rational coefficients.

A series carries its truncation order: the highest degree whose coefficient
is known. Binary operations truncate to the smaller of the two orders, so a
result never claims more precision than its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence

Rational = Fraction | int

__all__ = [
    "InsufficientOrder",
    "LaurentSeries",
    "RationalSeries",
    "ZeroConstantTerm",
    "exp_halfk",
    "laurent_mul",
    "laurent_residue",
    "series_add",
    "series_invert",
    "series_mul",
    "sinh_ratio",
]


class ZeroConstantTerm(ZeroDivisionError):
    """Raised when inverting a power series whose constant term vanishes."""


class InsufficientOrder(ValueError):
    """Raised when a requested coefficient lies beyond the truncation order."""


def _cauchy(a: Sequence[Fraction], b: Sequence[Fraction], length: int) -> tuple[Fraction, ...]:
    out = []
    for m in range(length):
        acc = Fraction(0)
        for i in range(max(0, m - len(b) + 1), min(m, len(a) - 1) + 1):
            ai = a[i]
            if ai:
                acc += ai * b[m - i]
        out.append(acc)
    return tuple(out)


@dataclass(frozen=True)
class RationalSeries:
    """Power series ``sum_j coeffs[j] x^j`` known up to degree ``order``."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        if not all(type(c) is Fraction for c in self.coeffs):
            object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Rational], order: int | None = None) -> RationalSeries:
        """Build a series, padding with zeros or truncating to ``order``."""
        cs = [Fraction(c) for c in coeffs]
        if order is None:
            order = max(len(cs) - 1, 0)
        if order < 0:
            raise ValueError("order must be nonnegative")
        cs = (cs + [Fraction(0)] * (order + 1))[: order + 1]
        return cls(tuple(cs))

    @classmethod
    def constant(cls, c: Rational, order: int) -> RationalSeries:
        return cls.from_coeffs([c], order)

    @classmethod
    def one(cls, order: int) -> RationalSeries:
        return cls.constant(1, order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, j: int) -> Fraction:
        if j < 0:
            return Fraction(0)
        if j > self.order:
            raise InsufficientOrder(f"degree {j} exceeds truncation order {self.order}")
        return self.coeffs[j]

    def truncate(self, order: int) -> RationalSeries:
        if order > self.order:
            raise InsufficientOrder(f"cannot extend order {self.order} to {order}")
        return RationalSeries(self.coeffs[: order + 1])

    def __add__(self, other: RationalSeries) -> RationalSeries:
        m = min(self.order, other.order)
        return RationalSeries(tuple(a + b for a, b in zip(self.coeffs[: m + 1], other.coeffs)))

    def __neg__(self) -> RationalSeries:
        return RationalSeries(tuple(-c for c in self.coeffs))

    def __sub__(self, other: RationalSeries) -> RationalSeries:
        return self + (-other)

    def scale(self, c: Rational) -> RationalSeries:
        c = Fraction(c)
        return RationalSeries(tuple(c * a for a in self.coeffs))

    def __mul__(self, other: RationalSeries | Rational) -> RationalSeries:
        if not isinstance(other, RationalSeries):
            return self.scale(other)
        m = min(self.order, other.order)
        return RationalSeries(_cauchy(self.coeffs, other.coeffs, m + 1))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> RationalSeries:
        if e < 0:
            return self.invert() ** (-e)
        result = RationalSeries.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def invert(self) -> RationalSeries:
        a0 = self.coeffs[0]
        if a0 == 0:
            raise ZeroConstantTerm("constant term is zero")
        inv0 = 1 / a0
        b = [inv0]
        for m in range(1, self.order + 1):
            acc = sum((self.coeffs[i] * b[m - i] for i in range(1, m + 1)), Fraction(0))
            b.append(-inv0 * acc)
        return RationalSeries(tuple(b))

    def __repr__(self) -> str:
        terms = " + ".join(f"({c})x^{j}" for j, c in enumerate(self.coeffs) if c) or "0"
        return f"RationalSeries({terms} + O(x^{self.order + 1}))"


def series_add(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    return a + b


def series_mul(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    return a * b


def series_invert(a: RationalSeries) -> RationalSeries:
    return a.invert()


def exp_halfk(k: int, order: int) -> RationalSeries:
    """Taylor series of ``exp(k x / 2)`` through degree ``order``."""
    h = Fraction(k, 2)
    return RationalSeries(tuple(h**j / factorial(j) for j in range(order + 1)))


def sinh_ratio(a: int, order: int) -> RationalSeries:
    """Taylor series of ``sinh(a x / 2) / (a x / 2)`` through degree ``order``."""
    if a < 1:
        raise ValueError("a must be a positive integer")
    h = Fraction(a, 2)
    coeffs = [
        h**j / factorial(j + 1) if j % 2 == 0 else Fraction(0) for j in range(order + 1)
    ]
    return RationalSeries(tuple(coeffs))


@dataclass(frozen=True)
class LaurentSeries:
    """Laurent series ``sum_j coeffs[j] x^(valuation + j)`` known up to degree ``order``.

    Leading zeros are stripped on construction, so for a nonzero series the
    coefficient at ``valuation`` is nonzero. The zero series keeps an empty
    coefficient tuple and ``valuation == order + 1``.
    """

    valuation: int
    coeffs: tuple[Fraction, ...]
    order: int

    def __post_init__(self):
        cs = [c if type(c) is Fraction else Fraction(c) for c in self.coeffs]
        expected = self.order - self.valuation + 1
        if len(cs) != max(expected, 0):
            raise ValueError(f"expected {expected} coefficients, got {len(cs)}")
        v = self.valuation
        while cs and cs[0] == 0:
            cs.pop(0)
            v += 1
        if not cs:
            v = self.order + 1
        object.__setattr__(self, "valuation", v)
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_series(cls, s: RationalSeries, shift: int = 0) -> LaurentSeries:
        """Return ``x^shift * s``."""
        return cls(shift, s.coeffs, s.order + shift)

    @classmethod
    def monomial(cls, c: Rational, degree: int, order: int) -> LaurentSeries:
        if order < degree:
            return cls(order + 1, (), order)
        return cls(degree, (Fraction(c),) + (Fraction(0),) * (order - degree), order)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, j: int) -> Fraction:
        if j > self.order:
            raise InsufficientOrder(f"degree {j} exceeds truncation order {self.order}")
        if j < self.valuation:
            return Fraction(0)
        return self.coeffs[j - self.valuation]

    def __mul__(self, other: LaurentSeries) -> LaurentSeries:
        return laurent_mul(self, other)

    def scale(self, c: Rational) -> LaurentSeries:
        c = Fraction(c)
        return LaurentSeries(self.valuation, tuple(c * a for a in self.coeffs), self.order)

    def __add__(self, other: LaurentSeries) -> LaurentSeries:
        order = min(self.order, other.order)
        v = min(self.valuation, other.valuation)
        if v > order:
            return LaurentSeries(order + 1, (), order)
        cs = [self[j] + other[j] for j in range(v, order + 1)]
        return LaurentSeries(v, tuple(cs), order)

    def invert(self) -> LaurentSeries:
        if self.is_zero():
            raise ZeroConstantTerm("cannot invert the zero Laurent series")
        unit = RationalSeries(self.coeffs).invert()
        return LaurentSeries.from_series(unit, -self.valuation)

    def __pow__(self, e: int) -> LaurentSeries:
        base = self if e >= 0 else self.invert()
        e = abs(e)
        result = LaurentSeries.monomial(1, 0, base.order - base.valuation)
        for _ in range(e):
            result = result * base
        return result

    def derivative(self) -> LaurentSeries:
        if self.is_zero():
            return LaurentSeries(self.order, (), self.order - 1)
        v = self.valuation
        cs = tuple((v + j) * c for j, c in enumerate(self.coeffs))
        return LaurentSeries(v - 1, cs, self.order - 1)


def laurent_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    # a zero series has valuation order + 1, which keeps this bound honest
    order = min(a.order + b.valuation, b.order + a.valuation)
    if a.is_zero() or b.is_zero():
        return LaurentSeries(order + 1, (), order)
    v = a.valuation + b.valuation
    return LaurentSeries(v, _cauchy(a.coeffs, b.coeffs, order - v + 1), order)


def laurent_residue(a: LaurentSeries) -> Fraction:
    """Coefficient of ``x^-1``."""
    if a.order < -1:
        raise InsufficientOrder(f"order {a.order} does not reach degree -1")
    return a[-1]

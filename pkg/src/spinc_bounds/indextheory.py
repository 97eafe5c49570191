"""Spin^c Dirac indices on complete intersections in complex projective space.

For ``V = V^n(a_1, ..., a_r)`` with hyperplane class ``x`` the index of the
Dirac operator whose canonical line bundle is the ``k``-th power of the
pulled-back hyperplane bundle is

    ind(D_k) = (A-hat(V) e^{kx/2})[V],   x^n[V] = a_1 ... a_r,

and ``A-hat(V) = ((x/2)/sinh(x/2))^{n+r+1} prod_j sinh(a_j x/2)/(a_j x/2)``.

Three routes to the same integer are provided. ``index`` reads the coefficient
of ``x^n`` from the power series; ``index_residue`` extracts a residue from a
Laurent expansion in ``sinh(x/2)``; ``index_lattice_sum`` adds values of the
Hilbert polynomial of ``CP^n`` over a lattice of shifts. The last two are
oracles for the first.

For ``n <= 2`` the parity test below is applied formally: it assumes
``H^2(V, Z)`` is generated by ``x``, which can fail for curves of higher
genus and for some surfaces, where ``w_2`` is still computed correctly but
other spin^c structures may exist.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import factorial, lcm, prod
from typing import Iterable, Sequence

from .series import (
    LaurentSeries,
    RationalSeries,
    exp_halfk,
    laurent_residue,
    sinh_ratio,
)

__all__ = [
    "CompleteIntersection",
    "DimensionTooSmall",
    "HilbertPolynomial",
    "ParityViolation",
    "SearchExhausted",
    "a_hat_class",
    "cpn_hilbert",
    "hilbert_polynomial",
    "hyperplane_section",
    "index",
    "index_lattice_sum",
    "index_residue",
    "lagrange_coefficients",
    "minimal_k0",
    "valid_parity",
]


class ParityViolation(ValueError):
    """No spin^c structure with canonical bundle ``H^k`` exists for this ``k``."""


class SearchExhausted(RuntimeError):
    """The k0 search ran past its probe budget, which indicates an arithmetic bug."""


class DimensionTooSmall(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CompleteIntersection:
    """The complete intersection ``V^n(a_1, ..., a_r)`` in ``CP^{n+r}``.

    ``degrees == ()`` is ``CP^n`` itself.
    """

    n: int
    degrees: tuple[int, ...] = ()

    def __post_init__(self):
        degrees = tuple(int(a) for a in self.degrees)
        object.__setattr__(self, "degrees", degrees)
        if self.n < 1:
            raise ValueError(f"complex dimension must be >= 1, got {self.n}")
        if any(a < 1 for a in degrees):
            raise ValueError(f"degrees must be positive, got {degrees}")

    @classmethod
    def projective_space(cls, n: int) -> CompleteIntersection:
        return cls(n, ())

    @classmethod
    def quadric(cls, n: int) -> CompleteIntersection:
        return cls(n, (2,))

    @property
    def r(self) -> int:
        return len(self.degrees)

    @property
    def total_degree(self) -> int:
        return sum(self.degrees)

    @property
    def ambient_dim(self) -> int:
        return self.n + self.r

    @property
    def top_pairing(self) -> int:
        """``x^n[V]``, the degree of ``V``."""
        return prod(self.degrees)

    @property
    def first_chern_multiple(self) -> int:
        """``c_1(V) = (n + r + 1 - |a|) x``."""
        return self.n + self.r + 1 - self.total_degree

    @property
    def is_spin(self) -> bool:
        return self.first_chern_multiple % 2 == 0

    @property
    def is_fano(self) -> bool:
        return self.first_chern_multiple > 0

    def __str__(self) -> str:
        if not self.degrees:
            return f"CP^{self.n}"
        return f"V^{self.n}({','.join(map(str, self.degrees))})"


@dataclass(frozen=True)
class HilbertPolynomial:
    """Polynomial in the twist ``k`` with exact coefficients, lowest degree first."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs) or (Fraction(0),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading_coefficient(self) -> Fraction:
        return self.coeffs[-1]

    @cached_property
    def _integer_form(self) -> tuple[tuple[int, ...], int]:
        denom = lcm(*(c.denominator for c in self.coeffs))
        return tuple(int(c * denom) for c in self.coeffs), denom

    def __call__(self, k: int | Fraction) -> Fraction:
        if isinstance(k, int):
            nums, denom = self._integer_form
            acc = 0
            for c in reversed(nums):
                acc = acc * k + c
            return Fraction(acc, denom)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * k + c
        return acc

    def zeros_in(self, ks: Iterable[int]) -> list[int]:
        return [k for k in ks if self(k) == 0]

    def __str__(self) -> str:
        terms = []
        for j in range(self.degree, -1, -1):
            c = self.coeffs[j]
            if c == 0:
                continue
            mono = "" if j == 0 else ("k" if j == 1 else f"k^{j}")
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = f"{abs(c)}*{mono}"
            else:
                body = str(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def lagrange_coefficients(xs: Sequence[int | Fraction], ys: Sequence[int | Fraction]) -> tuple[Fraction, ...]:
    """Coefficients (lowest first) of the interpolating polynomial through ``(xs, ys)``."""
    if len(xs) != len(ys):
        raise ValueError("xs and ys differ in length")
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    m = len(xs)
    total = [Fraction(0)] * m
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            # multiply basis by (k - xj)
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xj * basis[t + 1]
            denom *= xi - xj
        w = Fraction(yi) / denom
        for t, b in enumerate(basis):
            total[t] += w * b
    return tuple(total)


@lru_cache(maxsize=None)
def a_hat_class(ci: CompleteIntersection, order: int) -> RationalSeries:
    """A-hat class of ``ci`` as a series in the hyperplane class ``x``."""
    inv = sinh_ratio(1, order).invert()
    result = inv ** (ci.n + ci.r + 1)
    for a in ci.degrees:
        result = result * sinh_ratio(a, order)
    return result


def valid_parity(ci: CompleteIntersection, k: int) -> bool:
    """True iff a spin^c structure with canonical bundle ``f^*H^k`` exists."""
    return (k - ci.first_chern_multiple) % 2 == 0


def _as_number(value: Fraction) -> int | Fraction:
    return int(value) if value.denominator == 1 else value


def _check_parity(ci: CompleteIntersection, k: int, strict: bool) -> None:
    if strict and not valid_parity(ci, k):
        raise ParityViolation(
            f"{ci}: k={k} must be congruent to {ci.first_chern_multiple} mod 2"
        )


def index(ci: CompleteIntersection, k: int, strict: bool = False) -> int | Fraction:
    """``(A-hat(V) e^{kx/2})[V]`` via the coefficient of ``x^n``.

    The value is an integer whenever ``valid_parity(ci, k)``; for other ``k``
    it is still the value of the Hilbert polynomial, possibly a fraction.
    With ``strict`` such ``k`` raise :class:`ParityViolation`.
    """
    _check_parity(ci, k, strict)
    n = ci.n
    a_hat, twist = a_hat_class(ci, n), exp_halfk(k, n)
    # only the degree-n coefficient of the product is paired with [V]
    coeff = sum((a_hat[j] * twist[n - j] for j in range(n + 1)), Fraction(0))
    return _as_number(ci.top_pairing * coeff)


def _sinh_laurent(h: Fraction, rel_order: int) -> LaurentSeries:
    # sinh(h x) = sum_j h^{2j+1} x^{2j+1} / (2j+1)!
    coeffs = [
        h ** (j + 1) / factorial(j + 1) if j % 2 == 0 else Fraction(0)
        for j in range(rel_order + 1)
    ]
    return LaurentSeries(1, tuple(coeffs), 1 + rel_order)


@lru_cache(maxsize=None)
def _residue_kernel(ci: CompleteIntersection) -> LaurentSeries:
    """``sinh(x/2)^{-n-r-1} prod_j sinh(a_j x/2)``, the ``k``-independent factor."""
    n, r = ci.n, ci.r
    # every factor carries n terms past its valuation; the product has
    # valuation -(n+1), so its order lands exactly on degree -1
    kernel = _sinh_laurent(Fraction(1, 2), n) ** (-(n + r + 1))
    for a in ci.degrees:
        kernel = kernel * _sinh_laurent(Fraction(a, 2), n)
    return kernel


def index_residue(ci: CompleteIntersection, k: int, strict: bool = False) -> int | Fraction:
    """``2^{-n-1} res_{x=0} sinh(x/2)^{-n-r-1} e^{kx/2} prod_j sinh(a_j x/2)``."""
    _check_parity(ci, k, strict)
    n = ci.n
    integrand = _residue_kernel(ci) * LaurentSeries.from_series(exp_halfk(k, n))
    return _as_number(laurent_residue(integrand) / 2 ** (n + 1))


@lru_cache(maxsize=None)
def cpn_hilbert(n: int) -> HilbertPolynomial:
    """Hilbert polynomial of ``CP^n``: zeros ``n-1, n-3, ..., 1-n`` and value 1 at ``n+1``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    poly = [Fraction(1)]
    for z in range(1 - n, n, 2):
        poly = [Fraction(0)] + poly
        for t in range(len(poly) - 1):
            poly[t] -= z * poly[t + 1]
    raw = HilbertPolynomial(tuple(poly))
    scale = raw(n + 1)
    return HilbertPolynomial(tuple(c / scale for c in raw.coeffs))


def index_lattice_sum(ci: CompleteIntersection, k: int, strict: bool = False) -> int | Fraction:
    """Sum of ``P_n(2 l_1 + ... + 2 l_r + k)`` over ``l_j`` in ``(1-a_j)/2 .. (a_j-1)/2``."""
    _check_parity(ci, k, strict)
    pn = cpn_hilbert(ci.n)
    # iterate the doubled offsets 2 l_j to keep loop counters integral
    ranges = [range(1 - a, a, 2) for a in ci.degrees]
    total = sum((pn(sum(shift) + k) for shift in itertools.product(*ranges)), Fraction(0))
    return _as_number(total)


def hilbert_polynomial(ci: CompleteIntersection) -> HilbertPolynomial:
    """``k -> index(ci, k)`` as an exact polynomial, interpolated at ``k = 0..n``."""
    ks = list(range(ci.n + 1))
    return HilbertPolynomial(lagrange_coefficients(ks, [index(ci, k) for k in ks]))


def minimal_k0(ci: CompleteIntersection) -> int:
    """Smallest ``k >= 0`` of valid parity with nonzero index."""
    start = 0 if valid_parity(ci, 0) else 1
    for probe in range(2 * ci.n + 4):
        k = start + 2 * probe
        if index(ci, k) != 0:
            return k
    raise SearchExhausted(f"{ci}: no nonzero index among {2 * ci.n + 4} probes")


def hyperplane_section(ci: CompleteIntersection) -> CompleteIntersection:
    """``V^{n-1}(1, a_1, ..., a_r)``, the transverse intersection with a hyperplane."""
    if ci.n < 2:
        raise DimensionTooSmall("a hyperplane section of a curve is zero-dimensional")
    return CompleteIntersection(ci.n - 1, (1,) + ci.degrees)

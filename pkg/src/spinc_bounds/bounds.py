"""Scalar-curvature upper bounds for complete intersections.

All values use the Fubini-Study normalization with holomorphic sectional
curvature 4, under which ``||f^* omega|| <= n`` for an area-nonincreasing
map homotopic to the inclusion. A nonzero index for twist ``k`` then gives
``min kappa <= 2 k ||f^* F^H|| / i = 4 n k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .indextheory import CompleteIntersection, minimal_k0

__all__ = [
    "CASES",
    "CurvatureBound",
    "bound_closed_form",
    "bound_from_k0",
    "case_label",
    "general_bound",
]

CaseLabel = Literal["fano", "spin_even", "nonspin", "spin_odd"]
CASES: tuple[CaseLabel, ...] = ("fano", "spin_even", "nonspin", "spin_odd")


@dataclass(frozen=True)
class CurvatureBound:
    """Upper bound ``value`` on ``min kappa``, equal to ``4 n k0``."""

    value: int
    case_label: CaseLabel
    k0: int
    ci: CompleteIntersection
    note: str = ""

    def __post_init__(self):
        if self.value != 4 * self.ci.n * self.k0:
            raise ValueError(f"bound {self.value} is not 4*n*k0 for {self.ci}, k0={self.k0}")

    def as_dict(self) -> dict:
        return {"value": self.value, "case": self.case_label, "k0": self.k0}


def case_label(ci: CompleteIntersection) -> CaseLabel:
    if ci.total_degree <= ci.n + ci.r:
        return "fano"
    if not ci.is_spin:
        return "nonspin"
    return "spin_even" if ci.n % 2 == 0 else "spin_odd"


def bound_closed_form(ci: CompleteIntersection) -> CurvatureBound:
    """The four-row case table, evaluated without any index computation."""
    n, label = ci.n, case_label(ci)
    if label == "fano":
        value = 4 * n * (n + ci.r + 1 - ci.total_degree)
    elif label == "spin_even":
        value = 0
    elif label == "nonspin":
        value = 4 * n
    else:
        value = 8 * n
    note = ""
    if ci.total_degree == n + ci.r + 1 and n % 2 == 0:
        # c_1(V) = 0 with n even: the rigidity statement also covers this case
        note = "|a| = n+r+1 with n even: boundary case of the rigidity statement"
    return CurvatureBound(value, label, value // (4 * n), ci, note)


def bound_from_k0(ci: CompleteIntersection) -> CurvatureBound:
    """``4 n k0`` with ``k0`` found by searching for a nonzero index."""
    k0 = minimal_k0(ci)
    return CurvatureBound(4 * ci.n * k0, case_label(ci), k0, ci)


def general_bound(
    n: int,
    case: Literal["n_multiple", "n_plus_one_multiple"],
    alpha_norm: float,
) -> float:
    """Bound ``2 n ||alpha||`` or ``2 (n+1) ||alpha||`` for ``w_2 = n c`` or ``(n+1) c``."""
    if alpha_norm < 0:
        raise ValueError("alpha_norm must be nonnegative")
    if case == "n_multiple":
        return 2 * n * alpha_norm
    if case == "n_plus_one_multiple":
        return 2 * (n + 1) * alpha_norm
    raise ValueError(f"unknown case {case!r}")

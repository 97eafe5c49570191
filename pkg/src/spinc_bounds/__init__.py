"""Spin^c Dirac indices, Hilbert polynomials and scalar-curvature bounds for
complete intersections, with numerical checks of the 2-form norm and of the
Fubini-Study curvature constants."""

from .bounds import CurvatureBound, bound_closed_form, bound_from_k0, general_bound
from .indextheory import (
    CompleteIntersection,
    HilbertPolynomial,
    cpn_hilbert,
    hilbert_polynomial,
    index,
    index_lattice_sum,
    index_residue,
    minimal_k0,
    valid_parity,
)

__version__ = "0.1.0"

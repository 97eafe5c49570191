"""Finite-difference curvature of the Fubini-Study metric in an affine chart of CP^n.

The metric matrix is ``g_{i jbar} = d_i d_jbar log(1 + |z|^2)`` and the
Riemannian metric is ``Re sum g_{i jbar} dz_i dz_jbar``; this is the
normalization with holomorphic sectional curvature 4 (round ``CP^1`` of
radius 1/2). The complex Ricci matrix ``-d_i d_jbar log det g`` is computed
by central differences, never from its closed form, so that the module stays
an independent check of the curvature constants used elsewhere.

Real tangent vectors are ordered ``(x_1, y_1, ..., x_n, y_n)`` so that the
complex structure is the block matrix returned by
:func:`spinc_bounds.comass.complex_structure`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .comass import TwoForm, complex_structure, norm

__all__ = [
    "ChartOverflow",
    "ChartPoint",
    "IdentityReport",
    "KahlerData",
    "StepTooLarge",
    "StepTooSmall",
    "fs_metric",
    "orthonormal_frame",
    "realify",
    "ricci_and_kappa",
    "sample_chart_points",
    "verify_identities",
]

CHART_RADIUS = 10.0
MIN_STEP, MAX_STEP = 1e-5, 1e-2


class ChartOverflow(ValueError):
    pass


class StepTooSmall(ValueError):
    pass


class StepTooLarge(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ChartPoint:
    z: np.ndarray
    chart_radius: float = CHART_RADIUS

    def __post_init__(self):
        z = np.atleast_1d(np.asarray(self.z, dtype=complex))
        if z.ndim != 1 or z.size < 1:
            raise ValueError("a chart point is a nonempty complex vector")
        if not np.all(np.isfinite(z)):
            raise ChartOverflow("chart coordinates must be finite")
        if np.linalg.norm(z) >= self.chart_radius:
            raise ChartOverflow(f"|z| = {np.linalg.norm(z):.3g} is outside the chart radius {self.chart_radius}")
        z.setflags(write=False)
        object.__setattr__(self, "z", z)

    @property
    def n(self) -> int:
        return self.z.size


@dataclass(frozen=True, eq=False)
class KahlerData:
    g: np.ndarray
    ricci: np.ndarray | None = None
    kappa: float | None = None
    omega: TwoForm | None = None
    rho: TwoForm | None = None

    @property
    def n(self) -> int:
        return self.g.shape[0]


def _metric_matrix(z: np.ndarray) -> np.ndarray:
    s = 1.0 + np.vdot(z, z).real
    # d_i d_jbar log(1+|z|^2) = delta_ij / s - zbar_i z_j / s^2
    return np.eye(z.size) / s - np.outer(z.conj(), z) / s**2


def sample_chart_points(n: int, count: int, radius: float = 2.0, seed: int = 0) -> list[ChartPoint]:
    """``count`` points uniform in the ball ``|z| < radius``, the origin first.

    Far out in the chart the inverse metric grows like ``(1+|z|^2)^2`` and
    amplifies finite-difference round-off, so sampling stays in a fixed ball.
    """
    rng = np.random.default_rng(seed)
    points = [ChartPoint(np.zeros(n))]
    for _ in range(count - 1):
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        v *= radius * rng.uniform() ** (1 / (2 * n)) / np.linalg.norm(v)
        points.append(ChartPoint(v))
    return points


def fs_metric(p: ChartPoint) -> KahlerData:
    return KahlerData(g=_metric_matrix(p.z))


def realify(h: np.ndarray) -> np.ndarray:
    """Real ``2n x 2n`` matrix of the bilinear form ``(v, w) -> Re sum h_{ij} v_i conj(w_j)``."""
    n = h.shape[0]
    a, b = h.real, h.imag
    out = np.empty((2 * n, 2 * n))
    # v = x + i y, w = u + i t:  Re(v^T h conj(w)) = x.a.u + y.a.t + x.b.t - y.b.u
    out[0::2, 0::2] = a
    out[1::2, 1::2] = a
    out[0::2, 1::2] = b
    out[1::2, 0::2] = -b
    return out


def _log_det_metric(x: np.ndarray) -> float:
    z = x[0::2] + 1j * x[1::2]
    sign, logdet = np.linalg.slogdet(_metric_matrix(z))
    return float(logdet.real)


def _complex_hessian(f, z: np.ndarray, h: float) -> np.ndarray:
    """``d_i d_jbar f`` by central differences of the real Hessian."""
    n = z.size
    x0 = np.empty(2 * n)
    x0[0::2], x0[1::2] = z.real, z.imag
    m = 2 * n
    H = np.empty((m, m))
    f0 = f(x0)
    eye = np.eye(m) * h
    for a in range(m):
        H[a, a] = (f(x0 + eye[a]) - 2 * f0 + f(x0 - eye[a])) / h**2
        for b in range(a + 1, m):
            H[a, b] = H[b, a] = (
                f(x0 + eye[a] + eye[b]) - f(x0 + eye[a] - eye[b])
                - f(x0 - eye[a] + eye[b]) + f(x0 - eye[a] - eye[b])
            ) / (4 * h**2)
    xx, yy, xy, yx = H[0::2, 0::2], H[1::2, 1::2], H[0::2, 1::2], H[1::2, 0::2]
    # d_i d_jbar = (1/4)(d_xi - i d_yi)(d_xj + i d_yj)
    return 0.25 * (xx + yy + 1j * (xy - yx))


def orthonormal_frame(G: np.ndarray) -> np.ndarray:
    """Columns form a ``G``-orthonormal basis, via Gram-Schmidt (Cholesky)."""
    L = np.linalg.cholesky(G)
    return np.linalg.inv(L).T


def _form_in_frame(bilinear: np.ndarray, E: np.ndarray) -> TwoForm:
    # 2-form (X, Y) -> b(JX, Y) expressed in the frame E
    J = complex_structure(bilinear.shape[0])
    return TwoForm.skew_part(E.T @ J.T @ bilinear @ E)


def ricci_and_kappa(p: ChartPoint, h: float = 1e-3) -> KahlerData:
    if h < MIN_STEP:
        raise StepTooSmall(f"step {h} < {MIN_STEP}")
    if h > MAX_STEP:
        raise StepTooLarge(f"step {h} > {MAX_STEP}")
    g = _metric_matrix(p.z)
    ricci = -_complex_hessian(_log_det_metric, p.z, h)
    ricci = (ricci + ricci.conj().T) / 2
    G = realify(g)
    # the real Ricci tensor is twice the real part of its complex components,
    # while the metric was normalized without that factor
    R = 2.0 * realify(ricci)
    E = orthonormal_frame(G)
    kappa = float(np.trace(E.T @ R @ E))
    return KahlerData(
        g=g,
        ricci=ricci,
        kappa=kappa,
        omega=_form_in_frame(G, E),
        rho=_form_in_frame(R, E),
    )


@dataclass(frozen=True)
class IdentityReport:
    n: int
    kappa: float
    omega_norm: float
    rho_norm: float
    kappa_residual: float
    omega_norm_residual: float
    kappa_rho_residual: float
    rho_omega_residual: float
    einstein_residual: float
    tol: float

    @property
    def ok(self) -> bool:
        return max(
            self.kappa_residual,
            self.omega_norm_residual,
            self.kappa_rho_residual,
            self.rho_omega_residual,
            self.einstein_residual,
        ) < self.tol

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__} | {"ok": self.ok}


def verify_identities(p: ChartPoint, h: float = 1e-3, tol: float = 1e-4) -> IdentityReport:
    """Residuals of the curvature identities at ``p``.

    Checked: ``kappa = 4n(n+1)``, ``||omega|| = n``, ``kappa = 2||rho||``,
    ``rho = (n+1) * i F^H`` with ``i F^H = 2 omega`` (so the canonical bundle
    curvature is ``-(n+1)`` times that of ``H``), and ``Ric = (n+1) g``.
    """
    n = p.n
    data = ricci_and_kappa(p, h)
    omega_norm = norm(data.omega)
    rho_norm = norm(data.rho)
    hyperplane = 2.0 * data.omega.mat
    return IdentityReport(
        n=n,
        kappa=data.kappa,
        omega_norm=omega_norm,
        rho_norm=rho_norm,
        kappa_residual=abs(data.kappa - 4 * n * (n + 1)),
        omega_norm_residual=abs(omega_norm - n),
        kappa_rho_residual=abs(data.kappa - 2 * rho_norm),
        rho_omega_residual=float(np.abs(data.rho.mat - (n + 1) * hyperplane).max()),
        einstein_residual=float(np.abs(data.ricci - (n + 1) * data.g).max()),
        tol=tol,
    )

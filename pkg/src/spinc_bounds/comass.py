"""The norm ``||alpha|| = sum_j |lambda_j|`` on 2-forms and its pullback behaviour.

A 2-form on Euclidean ``R^d`` is stored as its skew matrix ``A`` with
``alpha(u, v) = u^T A v``. In a normal-form frame
``alpha = sum_j lambda_j e^{2j-1} ^ e^{2j}`` the singular values of ``A``
are the ``|lambda_j|``, each repeated twice, plus a zero when ``d`` is odd.

Two independent routes compute the norm: :func:`norm` pairs singular
values, :func:`frame_oracle` maximizes ``sum_j alpha(e_{2j-1}, e_{2j})``
over orthonormal frames.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DimensionMismatch",
    "LemmaViolated",
    "LinearMap",
    "NormLemmaReport",
    "NotSkew",
    "PairingFailure",
    "TwoForm",
    "area_dilation",
    "brute_force_area_dilation",
    "check_norm_lemma",
    "complex_structure",
    "frame_objective",
    "frame_oracle",
    "haar_orthogonal",
    "is_area_nonincreasing",
    "norm",
    "pullback",
    "rotation_numbers",
]

SKEW_TOL = 1e-12
PAIRING_TOL = 1e-8


class NotSkew(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class PairingFailure(ArithmeticError):
    """Singular values of a skew matrix did not come in equal pairs."""


class LemmaViolated(AssertionError):
    """``||f^* alpha|| > ||alpha||`` for an area-nonincreasing ``f``; carries the instance."""

    def __init__(self, message: str, alpha: TwoForm, f: LinearMap):
        super().__init__(message)
        self.alpha = alpha
        self.f = f


@dataclass(frozen=True, eq=False)
class TwoForm:
    mat: np.ndarray

    def __post_init__(self):
        m = np.array(self.mat, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise NotSkew(f"expected a nonempty square matrix, got shape {m.shape}")
        if not np.all(np.abs(m + m.T) <= SKEW_TOL):
            raise NotSkew(f"matrix is not skew: max |A + A^T| = {np.abs(m + m.T).max():.3e}")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @classmethod
    def from_rotation_numbers(cls, lams, dim: int | None = None) -> TwoForm:
        """``sum_j lams[j] e^{2j-1} ^ e^{2j}`` on ``R^dim``."""
        lams = list(lams)
        dim = 2 * len(lams) if dim is None else dim
        if dim < 2 * len(lams):
            raise DimensionMismatch(f"{len(lams)} blocks do not fit in dimension {dim}")
        m = np.zeros((dim, dim))
        for j, lam in enumerate(lams):
            m[2 * j, 2 * j + 1] = lam
            m[2 * j + 1, 2 * j] = -lam
        return cls(m)

    @classmethod
    def standard_symplectic(cls, n: int) -> TwoForm:
        return cls.from_rotation_numbers([1.0] * n)

    @classmethod
    def skew_part(cls, m) -> TwoForm:
        m = np.asarray(m, dtype=float)
        return cls((m - m.T) / 2)

    def padded(self) -> TwoForm:
        """Zero-padded to even dimension."""
        if self.dim % 2 == 0:
            return self
        m = np.zeros((self.dim + 1, self.dim + 1))
        m[: self.dim, : self.dim] = self.mat
        return TwoForm(m)

    def __add__(self, other: TwoForm) -> TwoForm:
        return TwoForm(self.mat + other.mat)

    def __mul__(self, c: float) -> TwoForm:
        return TwoForm(c * self.mat)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class LinearMap:
    """Differential ``f_*: R^l -> R^d`` stored as a ``d x l`` matrix."""

    mat: np.ndarray

    def __post_init__(self):
        m = np.array(self.mat, dtype=float)
        if m.ndim != 2:
            raise ValueError(f"expected a matrix, got shape {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    @property
    def source_dim(self) -> int:
        return self.mat.shape[1]

    @property
    def target_dim(self) -> int:
        return self.mat.shape[0]

    def singular_values(self) -> np.ndarray:
        return np.linalg.svd(self.mat, compute_uv=False)


def rotation_numbers(alpha: TwoForm) -> np.ndarray:
    """The ``lambda_j >= 0``, largest first, ``floor(d/2)`` of them."""
    s = np.linalg.svd(alpha.mat, compute_uv=False)
    scale = max(float(s[0]), 1.0) if s.size else 1.0
    d = alpha.dim
    pairs = s[: 2 * (d // 2)].reshape(-1, 2)
    if np.any(np.abs(pairs[:, 0] - pairs[:, 1]) > PAIRING_TOL * scale):
        raise PairingFailure(f"unpaired singular values {s}")
    if d % 2 and s[-1] > PAIRING_TOL * scale:
        raise PairingFailure(f"odd dimension but smallest singular value is {s[-1]}")
    return pairs.mean(axis=1)


def norm(alpha: TwoForm) -> float:
    return float(rotation_numbers(alpha).sum())


def complex_structure(d: int) -> np.ndarray:
    """Block-diagonal ``J`` with blocks ``[[0, -1], [1, 0]]``, a zero row/column if ``d`` is odd."""
    J = np.zeros((d, d))
    for j in range(d // 2):
        J[2 * j + 1, 2 * j] = 1.0
        J[2 * j, 2 * j + 1] = -1.0
    return J


def haar_orthogonal(d: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """``size`` Haar-distributed ``d x d`` orthogonal matrices."""
    g = rng.standard_normal((size, d, d))
    q, r = np.linalg.qr(g)
    # fix the QR sign ambiguity so the distribution is exactly Haar
    signs = np.sign(np.diagonal(r, axis1=1, axis2=2))
    signs[signs == 0] = 1.0
    return q * signs[:, None, :]


def frame_objective(alpha: TwoForm, frames: np.ndarray) -> np.ndarray:
    """``(1/2) tr(B A B^T J)`` for each frame ``B`` (rows are the frame vectors)."""
    J = complex_structure(alpha.dim)
    frames = np.asarray(frames)
    if frames.ndim == 2:
        return 0.5 * np.trace(frames @ alpha.mat @ frames.T @ J)
    c = frames @ alpha.mat @ np.transpose(frames, (0, 2, 1))
    return 0.5 * np.einsum("sij,ji->s", c, J)


def _ascend(alpha: TwoForm, B: np.ndarray, steps: int) -> float:
    # Cayley-retracted gradient ascent on O(d): along B_t = exp(tX) B the
    # derivative is tr(X (CJ - JC)) / 2 with C = B A B^T
    A, d = alpha.mat, alpha.dim
    J, eye = complex_structure(d), np.eye(d)
    eta = 0.5 / max(np.linalg.norm(A), 1e-300)
    best = frame_objective(alpha, B)
    for _ in range(steps):
        C = B @ A @ B.T
        X = J @ C - C @ J
        if np.abs(X).max() < 1e-15 * max(np.abs(A).max(), 1.0):
            break
        B = np.linalg.solve(eye - 0.5 * eta * X, eye + 0.5 * eta * X) @ B
        best = max(best, frame_objective(alpha, B))
    return float(best)


def frame_oracle(
    alpha: TwoForm,
    samples: int,
    seed: int | np.random.Generator = 0,
    refine: bool = True,
    polish: int = 4,
    steps: int = 400,
) -> float:
    """Lower bound for ``norm(alpha)`` from a maximum over orthonormal frames.

    The identity frame and ``samples`` Haar-random frames are scored. With
    ``refine`` the best ``polish`` of them are improved by gradient ascent
    over the orthogonal group; each value is still attained by a frame, so
    the result never exceeds the true norm beyond rounding.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    d = alpha.dim
    frames = np.concatenate([np.eye(d)[None], haar_orthogonal(d, samples, rng)])
    values = frame_objective(alpha, frames)
    best = float(values.max())
    if refine:
        for i in np.argsort(values)[::-1][:polish]:
            best = max(best, _ascend(alpha, frames[i], steps))
    return best


def pullback(alpha: TwoForm, f: LinearMap) -> TwoForm:
    if f.target_dim != alpha.dim:
        raise DimensionMismatch(f"map lands in R^{f.target_dim}, form lives on R^{alpha.dim}")
    return TwoForm.skew_part(f.mat.T @ alpha.mat @ f.mat)


def area_dilation(f: LinearMap) -> float:
    """Largest factor by which ``f`` stretches the area of a decomposable 2-vector."""
    s = f.singular_values()
    if s.size < 2:
        return 0.0
    return float(s[0] * s[1])


def brute_force_area_dilation(f: LinearMap, samples: int = 20000, seed: int = 0) -> float:
    """Max of ``|f(v) ^ f(w)|`` over random orthonormal pairs ``(v, w)``."""
    if f.source_dim < 2:
        return 0.0
    rng = np.random.default_rng(seed)
    q = haar_orthogonal(f.source_dim, samples, rng)
    fv = q[:, :, 0] @ f.mat.T
    fw = q[:, :, 1] @ f.mat.T
    gram = (fv * fv).sum(1) * (fw * fw).sum(1) - (fv * fw).sum(1) ** 2
    return float(np.sqrt(np.clip(gram, 0.0, None)).max())


def is_area_nonincreasing(f: LinearMap, tol: float = 1e-9) -> bool:
    return area_dilation(f) <= 1.0 + tol


@dataclass(frozen=True)
class NormLemmaReport:
    pulled_back: float
    original: float
    slack: float
    equality: bool
    retained_singular_values: np.ndarray = field(repr=False)

    @property
    def is_isometric_on_complement(self) -> bool:
        """All nonzero singular values of ``f`` are 1 within ``1e-6``."""
        return bool(np.all(np.abs(self.retained_singular_values - 1.0) <= 1e-6))


def check_norm_lemma(alpha: TwoForm, f: LinearMap, tol: float = 1e-9, equality_tol: float = 1e-8) -> NormLemmaReport:
    """Check ``||f^* alpha|| <= ||alpha||`` for an area-nonincreasing ``f``."""
    if not is_area_nonincreasing(f, tol):
        raise ValueError(f"map has area dilation {area_dilation(f):.6g} > 1")
    lhs = norm(pullback(alpha, f))
    rhs = norm(alpha)
    if lhs > rhs + tol:
        raise LemmaViolated(f"||f^*alpha|| = {lhs!r} exceeds ||alpha|| = {rhs!r}", alpha, f)
    s = f.singular_values()
    retained = s[s > 1e-8 * max(float(s[0]) if s.size else 0.0, 1.0)]
    return NormLemmaReport(lhs, rhs, rhs - lhs, abs(rhs - lhs) <= equality_tol, retained)

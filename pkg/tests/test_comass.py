import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from spinc_bounds.comass import (
    DimensionMismatch,
    LinearMap,
    NotSkew,
    TwoForm,
    area_dilation,
    brute_force_area_dilation,
    check_norm_lemma,
    frame_oracle,
    haar_orthogonal,
    is_area_nonincreasing,
    norm,
    pullback,
    rotation_numbers,
)

SEED = 20240601


def random_form(rng, d, scale=1.0):
    return TwoForm.skew_part(scale * rng.standard_normal((d, d)))


def random_contraction(rng, d, l):
    """Random ``f: R^l -> R^d`` with area dilation in (0, 1]."""
    m = rng.standard_normal((d, l))
    s = np.linalg.svd(m, compute_uv=False)
    if s.size < 2:
        return LinearMap(m)
    return LinearMap(m * rng.uniform(0.2, 1.0) / np.sqrt(s[0] * s[1]))


def submersion(rng, d, l):
    """Orthogonal projection ``R^l -> R^d`` (l >= d) composed with rotations."""
    u = haar_orthogonal(d, 1, rng)[0]
    v = haar_orthogonal(l, 1, rng)[0]
    return LinearMap(u @ np.eye(d, l) @ v)


class TestNorm:
    def test_definition(self):
        assert norm(TwoForm.from_rotation_numbers([3, -4])) == pytest.approx(7, abs=1e-12)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_standard_symplectic(self, n):
        assert abs(norm(TwoForm.standard_symplectic(n)) - n) <= 1e-12

    def test_rotation_numbers_sorted(self):
        lams = rotation_numbers(TwoForm.from_rotation_numbers([1, -5, 2], dim=7))
        np.testing.assert_allclose(lams, [5, 2, 1], atol=1e-12)

    def test_not_skew(self):
        with pytest.raises(NotSkew):
            TwoForm(np.eye(2))
        with pytest.raises(NotSkew):
            TwoForm(np.zeros((2, 3)))

    def test_orthogonal_invariance(self):
        rng = np.random.default_rng(SEED)
        for d in (2, 5, 8):
            a = random_form(rng, d)
            q = haar_orthogonal(d, 1, rng)[0]
            assert abs(norm(TwoForm.skew_part(q.T @ a.mat @ q)) - norm(a)) <= 1e-9

    def test_odd_dimension_padding(self):
        rng = np.random.default_rng(SEED)
        for d in (1, 3, 5, 7):
            a = random_form(rng, d)
            assert abs(norm(a) - norm(a.padded())) <= 1e-12

    def test_half_sum_of_singular_values(self):
        rng = np.random.default_rng(SEED)
        a = random_form(rng, 6)
        assert norm(a) == pytest.approx(np.linalg.svd(a.mat, compute_uv=False).sum() / 2, rel=1e-12)

    @settings(max_examples=80, deadline=None)
    @given(
        arrays(np.float64, (4, 4), elements=st.floats(-10, 10)),
        arrays(np.float64, (4, 4), elements=st.floats(-10, 10)),
        st.floats(-5, 5),
    )
    def test_norm_axioms(self, m1, m2, c):
        a, b = TwoForm.skew_part(m1), TwoForm.skew_part(m2)
        assert norm(a + b) <= norm(a) + norm(b) + 1e-9
        assert abs(norm(c * a) - abs(c) * norm(a)) <= 1e-9 * max(1.0, norm(a))


class TestFrameOracle:
    def test_normal_form_identity_frame(self):
        a = TwoForm.from_rotation_numbers([3, 4])
        assert frame_oracle(a, 1, refine=False) == norm(a)

    def test_lower_bound_without_refinement(self):
        rng = np.random.default_rng(SEED)
        for d in range(1, 9):
            a = random_form(rng, d)
            assert frame_oracle(a, 500, seed=d, refine=False) <= norm(a) + 1e-9

    @pytest.mark.parametrize("d", [2, 3, 6, 8])
    def test_convergence(self, d):
        rng = np.random.default_rng(SEED + d)
        a = random_form(rng, d, scale=3.0)
        value = frame_oracle(a, 20000, seed=d)
        assert value <= norm(a) + 1e-9
        assert value >= 0.95 * norm(a)

    def test_deterministic(self):
        a = random_form(np.random.default_rng(SEED), 5)
        assert frame_oracle(a, 300, seed=7) == frame_oracle(a, 300, seed=7)

    def test_haar_orthogonal(self):
        q = haar_orthogonal(5, 50, np.random.default_rng(SEED))
        np.testing.assert_allclose(q @ np.transpose(q, (0, 2, 1)), np.broadcast_to(np.eye(5), q.shape), atol=1e-12)

    def test_rejects_zero_samples(self):
        with pytest.raises(ValueError):
            frame_oracle(TwoForm.standard_symplectic(1), 0)


class TestPullback:
    def test_identity(self):
        a = random_form(np.random.default_rng(SEED), 4)
        np.testing.assert_allclose(pullback(a, LinearMap(np.eye(4))).mat, a.mat)

    def test_coordinate_plane(self):
        a = random_form(np.random.default_rng(SEED), 4)
        inc = LinearMap(np.eye(4)[:, [1, 3]])
        np.testing.assert_allclose(pullback(a, inc).mat, a.mat[np.ix_([1, 3], [1, 3])])

    def test_scaling(self):
        a = random_form(np.random.default_rng(SEED), 6)
        assert norm(pullback(a, LinearMap(1.7 * np.eye(6)))) == pytest.approx(1.7**2 * norm(a), rel=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            pullback(TwoForm.standard_symplectic(2), LinearMap(np.eye(3)))


class TestAreaDilation:
    def test_projection(self):
        assert area_dilation(LinearMap(np.eye(4)[:2])) == pytest.approx(1.0)

    def test_stretched_pair(self):
        f = LinearMap(np.diag([2, 0.5, 0.5, 0.25]))
        assert area_dilation(f) == pytest.approx(1.0)
        assert brute_force_area_dilation(f, 20000) <= 1.0 + 1e-12
        # the top pair realizes the dilation
        e0, e1 = np.eye(4)[0], np.eye(4)[1]
        fv, fw = f.mat @ e0, f.mat @ e1
        assert np.sqrt(fv @ fv * (fw @ fw) - (fv @ fw) ** 2) == pytest.approx(1.0)

    def test_scaling(self):
        assert area_dilation(LinearMap(2 * np.eye(3))) == pytest.approx(4.0)

    def test_one_dimensional(self):
        assert area_dilation(LinearMap(np.ones((3, 1)))) == 0.0
        assert brute_force_area_dilation(LinearMap(np.ones((3, 1)))) == 0.0

    def test_singular_value_formula_against_brute_force(self):
        rng = np.random.default_rng(SEED)
        for _ in range(20):
            d, l = rng.integers(2, 6, size=2)
            f = LinearMap(rng.standard_normal((d, l)))
            exact = area_dilation(f)
            brute = brute_force_area_dilation(f, 20000, seed=int(rng.integers(1 << 30)))
            assert brute <= exact * (1 + 1e-12)
            assert brute >= 0.9 * exact

    def test_predicate(self):
        assert is_area_nonincreasing(LinearMap(np.eye(3)))
        assert not is_area_nonincreasing(LinearMap(1.01 * np.eye(3)))


class TestNormLemma:
    def test_isometry_equality(self):
        rng = np.random.default_rng(SEED)
        a = random_form(rng, 6)
        q = haar_orthogonal(6, 1, rng)[0]
        report = check_norm_lemma(a, LinearMap(q))
        assert abs(report.slack) <= 1e-9 and report.equality
        assert report.is_isometric_on_complement

    @pytest.mark.parametrize("mu", [1.2, 2.0, 5.0])
    def test_stretched_pair_is_strict(self, mu):
        rng = np.random.default_rng(SEED)
        a = random_form(rng, 4)
        f = LinearMap(np.diag([mu, 1 / mu, 1 / mu, 1 / mu]))
        assert area_dilation(f) == pytest.approx(1.0)
        report = check_norm_lemma(a, f)
        assert report.slack > 1e-8 and not report.equality

    def test_random_pairs(self):
        rng = np.random.default_rng(SEED)
        for _ in range(300):
            d = 2 * int(rng.integers(1, 5))
            l = int(rng.integers(1, 9))
            check_norm_lemma(random_form(rng, d), random_contraction(rng, d, l))

    def test_submersions_attain_equality(self):
        rng = np.random.default_rng(SEED)
        for n in (2, 3):
            for l in (2 * n, 2 * n + 2):
                report = check_norm_lemma(random_form(rng, 2 * n), submersion(rng, 2 * n, l))
                assert report.equality and report.is_isometric_on_complement

    def test_equality_detector(self):
        # mixtures of submersions and stretched submersions: equality only for the former
        rng = np.random.default_rng(SEED)
        for _ in range(200):
            n = int(rng.integers(2, 4))
            l = 2 * n + int(rng.integers(0, 3))
            f = submersion(rng, 2 * n, l).mat
            if rng.random() < 0.5:
                mu = rng.uniform(1.0, 1.5)
                f = np.diag([mu] + [1 / mu] * (2 * n - 1)) @ f
            report = check_norm_lemma(random_form(rng, 2 * n), LinearMap(f))
            if report.equality:
                assert report.is_isometric_on_complement

    def test_precondition(self):
        with pytest.raises(ValueError):
            check_norm_lemma(TwoForm.standard_symplectic(2), LinearMap(2 * np.eye(4)))

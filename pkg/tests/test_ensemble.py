"""
Tests for entry laws, the X J X* ensemble and moving-average series.
"""

import numpy as np
import pytest

from src.ensemble import (
    COMPLEX_BERNOULLI_PHASE,
    COMPLEX_GAUSSIAN,
    SUPPORTED_LAWS,
    UNIFORM_PHASE_DISC,
    EntryLaw,
    MaModel,
    MatrixShape,
    autocov_01,
    autocov_1,
    entry_moments,
    generate_X,
    identity_B1,
    ma1_model,
    make_J,
    make_toeplitz_B1,
    product_Y,
    simulate_series,
    smooth_X,
    white_noise_model,
)
from src.utils.errors import DomainError, ShapeMismatchError, UnsupportedEntryLawError


class TestEntryLaw:
    """Tests for EntryLaw."""

    @pytest.mark.parametrize("kind", ["real-gaussian", "rademacher"])
    def test_real_laws_rejected(self, kind):
        """Real laws violate the pseudo-variance condition."""
        with pytest.raises(UnsupportedEntryLawError):
            EntryLaw(kind, 10)

    def test_unknown_law_is_value_error(self):
        """Unknown laws raise a ValueError subclass."""
        with pytest.raises(ValueError):
            EntryLaw("cauchy", 10)

    @pytest.mark.parametrize("kind", SUPPORTED_LAWS)
    def test_moments(self, kind):
        """n E|x|^2 is 1 and n E x^2 vanishes."""
        moments = entry_moments(EntryLaw(kind, 50), count=40000, seed=3)
        assert abs(moments["second"] - 1.0) < 5 * moments["second_stderr"] + 1e-12
        assert moments["pseudo"] < 0.03

    def test_bernoulli_phase_has_unit_modulus(self):
        """QPSK entries have |x|^2 = 1/n exactly."""
        moments = entry_moments(EntryLaw(COMPLEX_BERNOULLI_PHASE, 8), count=1000)
        assert moments["second"] == pytest.approx(1.0, abs=1e-12)
        assert moments["fourth"] == pytest.approx(1.0, abs=1e-12)

    def test_disc_fourth_moment(self):
        """Uniform disc of radius sqrt(2/n): n^2 E|x|^4 = 4/3."""
        moments = entry_moments(EntryLaw(UNIFORM_PHASE_DISC, 20), count=200000, seed=1)
        assert moments["fourth"] == pytest.approx(4.0 / 3.0, rel=0.02)


class TestGenerateX:
    """Tests for drawing X."""

    def test_shape_dtype_and_readonly(self):
        """X is a read-only complex128 N x n array."""
        X = generate_X(MatrixShape(7, 11), seed=2)
        assert X.shape == (7, 11)
        assert X.dtype == np.complex128
        with pytest.raises(ValueError):
            X[0, 0] = 1.0

    def test_deterministic_per_trial(self):
        """Same (seed, trial) gives the same matrix, another trial differs."""
        shape = MatrixShape(5, 6)
        assert np.array_equal(generate_X(shape, seed=4, trial=1), generate_X(shape, seed=4, trial=1))
        assert not np.array_equal(generate_X(shape, seed=4, trial=1), generate_X(shape, seed=4, trial=2))

    def test_law_scale_must_match(self):
        """An entry law scaled for another n is refused."""
        with pytest.raises(ShapeMismatchError):
            generate_X(MatrixShape(3, 4), EntryLaw(COMPLEX_GAUSSIAN, 5))

    def test_gamma(self):
        """gamma is the exact ratio N / n."""
        shape = MatrixShape(500, 1000)
        assert shape.gamma.numerator == 1 and shape.gamma.denominator == 2
        assert shape.gamma_float == 0.5

    def test_invalid_shape(self):
        """Nonpositive dimensions are a domain error."""
        with pytest.raises(DomainError):
            MatrixShape(0, 3)

    @pytest.mark.parametrize("N,n", [(2.5, 4), (3, 4.0), (True, 4)])
    def test_non_integer_shape(self, N, n):
        """Sizes must be integers."""
        with pytest.raises(DomainError):
            MatrixShape(N, n)

    def test_numpy_integer_shape(self):
        """Numpy integer sizes are accepted."""
        assert MatrixShape(np.int64(3), np.int32(6)).gamma_float == 0.5

    def test_non_integer_law_scale(self):
        """The entry law scale n must be an integer."""
        with pytest.raises(DomainError):
            EntryLaw(n=2.5)

    def test_smoothing_is_tiny(self):
        """Smoothing moves X by about n^-10."""
        X = generate_X(MatrixShape(4, 8), seed=1)
        smoothed = smooth_X(X, seed=1)
        assert smoothed.shape == X.shape
        assert np.max(np.abs(smoothed - X)) < 1e-6

    def test_smoothing_needs_two_columns(self):
        """n = 1 cannot be smoothed."""
        with pytest.raises(DomainError):
            smooth_X(np.ones((3, 1), dtype=complex))


class TestProduct:
    """Tests for J and X J X*."""

    def test_J_shifts_basis(self):
        """J e_k = e_{k+1 mod n}."""
        J = make_J(5)
        for k in range(5):
            e = np.zeros(5)
            e[k] = 1.0
            assert np.argmax(J @ e) == (k + 1) % 5

    def test_J_is_unitary(self):
        """J is a permutation matrix."""
        J = make_J(6)
        assert np.allclose(J @ J.T, np.eye(6))

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 7, 10])
    def test_J_determinant_is_cycle_parity(self, n):
        """det J = (-1)^(n-1)."""
        assert np.linalg.det(make_J(n)) == pytest.approx((-1) ** (n - 1))

    def test_product_shape(self):
        """Y is N x N."""
        X = generate_X(MatrixShape(3, 5))
        assert product_Y(X, make_J(5)).shape == (3, 3)

    def test_product_mismatch(self):
        """J must be n x n."""
        X = generate_X(MatrixShape(3, 5))
        with pytest.raises(ShapeMismatchError):
            product_Y(X, make_J(4))


class TestSeries:
    """Tests for MA models and autocovariances."""

    def test_white_series_is_scaled_X(self):
        """Under H0 the observations are sqrt(n) X."""
        shape = MatrixShape(4, 9)
        Y_obs = simulate_series(white_noise_model(4, 9), seed=5)
        assert np.allclose(Y_obs, np.sqrt(9) * generate_X(shape, seed=5))

    def test_autocov_of_white_noise_is_XJX(self):
        """R_1 of white noise equals X J X* exactly."""
        shape = MatrixShape(6, 10)
        X = generate_X(shape, seed=8)
        Y_obs = simulate_series(white_noise_model(6, 10), seed=8)
        assert np.allclose(autocov_1(Y_obs), product_Y(X, make_J(10)))

    def test_autocov_01_is_hermitian(self):
        """The stacked covariance is Hermitian 2N x 2N."""
        Y_obs = simulate_series(white_noise_model(3, 7), seed=1)
        R = autocov_01(Y_obs)
        assert R.shape == (6, 6)
        assert np.allclose(R, R.conj().T)

    def test_ma1_adds_lagged_term(self):
        """y_t = w_t + B_1 w_{t-1}."""
        B1 = identity_B1(3, 0.25)
        model = ma1_model(3, 5, B1)
        W = np.sqrt(5) * generate_X(MatrixShape(3, 5), seed=2)
        Y_obs = simulate_series(model, seed=2)
        assert np.allclose(Y_obs, W + 0.5 * np.roll(W, 1, axis=1))

    def test_model_flags(self):
        """Only the null model is white."""
        assert white_noise_model(3, 4).is_white
        assert not ma1_model(3, 4, identity_B1(3, 0.1)).is_white
        assert ma1_model(3, 4, identity_B1(3, 0.1)).p == 1

    def test_coefficient_shape_checked(self):
        """Coefficients must be N x N."""
        with pytest.raises(ShapeMismatchError):
            MaModel((np.eye(3), np.eye(2)), 3, 4)

    def test_toeplitz_normalization(self):
        """tr(B_1 B_1*) / N hits the requested value."""
        B1 = make_toeplitz_B1(50, 1e-2)
        assert np.sum(np.abs(B1) ** 2) / 50 == pytest.approx(1e-2, rel=1e-12)
        assert np.allclose(B1, B1.T)

    def test_identity_alpha(self):
        """identity_B1 uses alpha^2."""
        assert np.allclose(identity_B1(2, 0.04), 0.2 * np.eye(2))
        with pytest.raises(DomainError):
            identity_B1(2, -1.0)

"""
Tests for the exact 2-Wasserstein distance.
"""

import numpy as np
import pytest

from src.lsd import LsdModel, sample_lsd
from src.spectra import eigenvalues
from src.transport import PointCloud, optimal_matching, wasserstein2, wasserstein2_oracle
from src.utils.errors import DomainError, ShapeMismatchError
from src.utils.seeding import make_rng


def _cloud(rng, m):
    return rng.standard_normal(m) + 1j * rng.standard_normal(m)


class TestPointCloud:
    """Tests for PointCloud."""

    def test_real_embedding(self):
        """Real input gets a zero imaginary part."""
        cloud = PointCloud(np.array([1.0, 2.0]))
        assert cloud.points.dtype == np.complex128
        assert cloud.size == 2

    def test_empty_rejected(self):
        """m >= 1."""
        with pytest.raises(DomainError):
            PointCloud(np.array([]))

    def test_non_finite_rejected(self):
        """Coordinates must be finite."""
        with pytest.raises(DomainError):
            PointCloud(np.array([1.0, np.inf]))


class TestWasserstein:
    """Tests for wasserstein2 and its brute-force oracle."""

    def test_swapped_pair(self):
        """{0, 1} vs {1, 2}: sqrt(1.5)."""
        assert wasserstein2([0, 1], [1, 2]) == pytest.approx(np.sqrt(1.5))

    def test_single_points(self):
        """{3i} vs {4}: 5."""
        assert wasserstein2([3j], [4]) == pytest.approx(5.0)

    def test_identical_clouds(self):
        """Permuted copies are at distance 0."""
        rng = make_rng(0, 20)
        P = _cloud(rng, 30)
        assert wasserstein2(P, rng.permutation(P)) == pytest.approx(0.0, abs=1e-12)

    def test_unequal_sizes(self):
        """Different cardinalities are refused."""
        with pytest.raises(ShapeMismatchError, match="unequal supports"):
            wasserstein2([0, 1], [0])

    def test_matches_oracle(self):
        """Hungarian solution equals exhaustive search for m <= 8."""
        rng = make_rng(1, 20)
        for m in range(1, 9):
            for _ in range(3):
                P, Q = _cloud(rng, m), _cloud(rng, m)
                assert wasserstein2(P, Q) == pytest.approx(wasserstein2_oracle(P, Q), abs=1e-12)

    def test_oracle_cap(self):
        """The oracle refuses more than 8 points."""
        with pytest.raises(DomainError):
            wasserstein2_oracle(np.zeros(9), np.ones(9))

    def test_symmetry_and_triangle(self):
        """Symmetric and subadditive."""
        rng = make_rng(2, 20)
        P, Q, R = (_cloud(rng, 25) for _ in range(3))
        assert wasserstein2(P, Q) == pytest.approx(wasserstein2(Q, P), abs=1e-12)
        assert wasserstein2(P, R) <= wasserstein2(P, Q) + wasserstein2(Q, R) + 1e-12

    def test_scale_equivariance(self):
        """W2(cP, cQ) = |c| W2(P, Q)."""
        rng = make_rng(3, 20)
        P, Q = _cloud(rng, 15), _cloud(rng, 15)
        c = 2.0 - 1.5j
        assert wasserstein2(c * P, c * Q) == pytest.approx(abs(c) * wasserstein2(P, Q), rel=1e-10)

    def test_translation(self):
        """Translating a cloud by a puts it at distance |a|."""
        P = np.array([0.0, 1.0, 2.0j])
        assert wasserstein2(P, P + (1 + 1j)) == pytest.approx(np.sqrt(2.0))

    def test_matching_permutation(self):
        """Matching is a bijection and its cost is the squared distance."""
        P = np.array([0.0, 10.0, 5.0])
        Q = np.array([10.1, 5.1, 0.1])
        matching = optimal_matching(P, Q)
        assert list(matching.permutation) == [2, 0, 1]
        assert matching.distance**2 == pytest.approx(matching.cost)

    def test_spectral_samples_accepted(self):
        """SpectralSample inputs are used through their points."""
        S = eigenvalues(np.diag([1.0, 2.0j]).astype(complex))
        T = sample_lsd(LsdModel(1.0), 2, seed=0)
        assert wasserstein2(S, T) == pytest.approx(wasserstein2(S.points, T.points))

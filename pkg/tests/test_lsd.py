"""
Tests for the closed-form limit law and the Marchenko-Pastur reference law.
"""

import numpy as np
import pytest
from scipy.integrate import quad

from src.ensemble import MatrixShape, generate_X, make_J, product_Y
from src.lsd import (
    DENSITY_FLOOR,
    LsdModel,
    MpModel,
    g_derivative,
    g_forward,
    g_inverse,
    g_inverse_gamma_one,
    lsd_cdf,
    lsd_density,
    lsd_quantile,
    mp_cdf,
    mp_density,
    mp_quantile,
    mp_sample,
    sample_lsd,
    sup_distance,
)
from src.spectra import RadialEcdf, eigenvalues, radial_ecdf
from src.utils.errors import DomainError, UnboundedDensityError


class TestLsdModel:
    """Tests for the derived constants."""

    def test_constants_gamma_two(self):
        """Ring radii and atom for gamma = 2."""
        model = LsdModel(2.0)
        assert model.r_inner == pytest.approx(1.0 / np.sqrt(2.0))
        assert model.r_outer == pytest.approx(np.sqrt(6.0))
        assert model.atom0 == pytest.approx(0.5)

    def test_constants_gamma_half(self):
        """Disc support, no atom, for gamma < 1."""
        model = LsdModel(0.5)
        assert model.r_inner == 0.0
        assert model.atom0 == 0.0
        assert model.support()["r_outer"] == pytest.approx(np.sqrt(0.75))

    @pytest.mark.parametrize("gamma", [0.0, -1.0, float("nan")])
    def test_invalid_gamma(self, gamma):
        """gamma must be positive and finite."""
        with pytest.raises(DomainError):
            LsdModel(gamma)


class TestRadialMap:
    """Tests for g, g' and g^-1."""

    @pytest.mark.parametrize("gamma", [0.3, 1.0, 2.0, 5.0])
    def test_inverse_roundtrip(self, gamma):
        """g(g^-1(t)) = t across the range."""
        model = LsdModel(gamma)
        t = np.linspace(model.t_lo, model.t_hi, 41)
        y = g_inverse(t, model)
        assert np.allclose(g_forward(y, model), t, atol=1e-11)

    def test_endpoints(self):
        """g maps the y-interval onto [r_inner^2, r_outer^2]."""
        model = LsdModel(2.0)
        assert g_forward(model.y_lo, model) == pytest.approx(model.r_inner**2)
        assert g_forward(model.y_hi, model) == pytest.approx(model.r_outer**2)

    def test_derivative_matches_finite_difference(self):
        """Analytic g' against a central difference."""
        model = LsdModel(1.5)
        y, h = 1.0, 1e-6
        numeric = (g_forward(y + h, model) - g_forward(y - h, model)) / (2 * h)
        assert g_derivative(y, model) == pytest.approx(numeric, rel=1e-6)

    def test_increasing(self):
        """g' > 0 inside the interval."""
        model = LsdModel(3.0)
        y = np.linspace(model.y_lo + 1e-3, model.y_hi, 50)
        assert np.all(g_derivative(y, model) > 0)

    def test_out_of_domain(self):
        """Arguments outside the interval are refused."""
        model = LsdModel(2.0)
        with pytest.raises(DomainError):
            g_forward(0.5, model)
        with pytest.raises(DomainError):
            g_inverse(model.t_hi + 1.0, model)

    def test_gamma_one_closed_form(self):
        """Cube-root formula agrees with the numerical inverse."""
        grid = np.linspace(0.0, 2.0, 1000)
        closed = g_inverse_gamma_one(grid)
        assert np.max(np.abs(closed - g_inverse(grid, LsdModel(1.0)))) < 1e-10

    def test_gamma_one_value_at_one(self):
        """g^-1(1) solves 4y^3 / (y + 1) = 1."""
        y = g_inverse_gamma_one(1.0)
        assert 4 * y**3 / (y + 1) == pytest.approx(1.0, abs=1e-12)


class TestRadialLaw:
    """Tests for F, its density and quantile."""

    @pytest.mark.parametrize("gamma", [0.5, 2.0])
    def test_cdf_endpoints(self, gamma):
        """F jumps to the atom at 0 and reaches 1 at the outer radius."""
        model = LsdModel(gamma)
        assert lsd_cdf(0.0, model) == pytest.approx(model.atom0)
        assert lsd_cdf(model.r_outer, model) == pytest.approx(1.0)
        assert lsd_cdf(10.0, model) == 1.0

    def test_cdf_flat_in_hole(self):
        """F is constant on [0, r_inner] for gamma > 1."""
        model = LsdModel(3.0)
        r = np.linspace(0.0, model.r_inner, 7)
        assert np.allclose(lsd_cdf(r, model), model.atom0)

    def test_cdf_monotone(self):
        """F is nondecreasing."""
        model = LsdModel(0.8)
        values = lsd_cdf(np.linspace(0.0, 2.0, 300), model)
        assert np.all(np.diff(values) >= -1e-15)

    @pytest.mark.parametrize("gamma", [0.5, 2.0])
    def test_density_integrates(self, gamma):
        """Mass of the bulk is 1 - atom."""
        model = LsdModel(gamma)
        mass, _ = quad(lambda r: 2 * np.pi * r * lsd_density(r, model), model.r_inner + 1e-12, model.r_outer, limit=200)
        assert mass == pytest.approx(1.0 - model.atom0, abs=1e-6)

    def test_density_zero_outside(self):
        """No density beyond the outer radius."""
        model = LsdModel(0.5)
        assert lsd_density(2.0, model) == 0.0

    def test_density_unbounded_at_gamma_one(self):
        """gamma = 1 density diverges at the origin."""
        with pytest.raises(UnboundedDensityError):
            lsd_density(DENSITY_FLOOR / 10, LsdModel(1.0))

    def test_quantile_inverts_cdf(self):
        """F(F^-1(u)) = u outside the atom."""
        model = LsdModel(2.0)
        u = np.linspace(0.55, 0.99, 12)
        assert np.allclose(lsd_cdf(lsd_quantile(u, model), model), u, atol=1e-10)
        assert lsd_quantile(0.3, model) == 0.0

    def test_quantile_levels_checked(self):
        """Levels lie in [0, 1]."""
        with pytest.raises(DomainError):
            lsd_quantile(1.5, LsdModel(1.0))


class TestSampling:
    """Tests for exact sampling and the Kolmogorov distance."""

    def test_atom_fraction(self):
        """About 1 - 1/gamma of the draws are exactly 0."""
        model = LsdModel(2.0)
        sample = sample_lsd(model, 20000, seed=1)
        assert len(sample) == 20000
        assert np.mean(sample.points == 0) == pytest.approx(0.5, abs=0.02)

    def test_sample_matches_law(self):
        """Large samples are close to F in sup distance."""
        model = LsdModel(0.5)
        sample = sample_lsd(model, 20000, seed=2)
        assert sup_distance(radial_ecdf(sample), model) < 0.02

    def test_rotation_invariant(self):
        """Sample mean is near the origin."""
        sample = sample_lsd(LsdModel(1.0), 20000, seed=3)
        assert abs(np.mean(sample.points)) < 0.03

    def test_sampling_deterministic(self):
        """Same seed, same sample."""
        model = LsdModel(1.0)
        assert np.array_equal(sample_lsd(model, 50, seed=4).points, sample_lsd(model, 50, seed=4).points)

    def test_sup_distance_of_quantile_grid(self):
        """Midpoint quantiles sit within 1/(2m) of F."""
        model = LsdModel(0.5)
        m = 400
        radii = np.sort(lsd_quantile((np.arange(m) + 0.5) / m, model))
        assert sup_distance(RadialEcdf(radii), model) == pytest.approx(0.5 / m, abs=1e-9)


class TestMarchenkoPastur:
    """Tests for MP_ratio."""

    def test_edges(self):
        """Edges (1 -/+ sqrt(ratio))^2."""
        mp = MpModel(0.25)
        assert mp.lo == pytest.approx(0.25)
        assert mp.hi == pytest.approx(2.25)
        assert MpModel.for_gamma(0.5).ratio == 1.0

    def test_cdf_matches_density(self):
        """Tabulated F against quadrature of the density."""
        mp = MpModel(0.5)
        x = 1.3
        mass, _ = quad(lambda s: mp_density(s, mp), mp.lo, x)
        assert mp_cdf(x, mp) == pytest.approx(mass, abs=1e-6)

    def test_atom(self):
        """ratio > 1 puts 1 - 1/ratio at 0."""
        mp = MpModel(2.0)
        assert mp_cdf(0.0, mp) == pytest.approx(0.5)
        assert mp_cdf(mp.hi, mp) == pytest.approx(1.0)
        assert mp_quantile(0.2, mp) == 0.0

    def test_quantile_range(self):
        """Continuous quantiles lie in [lo, hi]."""
        mp = MpModel(0.7)
        q = mp_quantile(np.linspace(0.0, 1.0, 21), mp)
        assert np.all((q >= mp.lo - 1e-12) & (q <= mp.hi + 1e-12))

    def test_sample_mean_is_one(self):
        """Unit-variance MP has mean 1."""
        sample = mp_sample(MpModel(1.0), 20000, seed=5)
        assert np.mean(sample.points) == pytest.approx(1.0, abs=0.03)
        assert np.all(np.isreal(sample.points))

    def test_invalid_ratio(self):
        """ratio must be positive."""
        with pytest.raises(DomainError):
            MpModel(0.0)


@pytest.mark.slow
class TestEmpiricalConvergence:
    """Eigenvalues of X J X* against F."""

    def test_gamma_half(self):
        """(N, n) = (500, 1000): sup distance <= 0.06."""
        X = generate_X(MatrixShape(500, 1000), seed=0)
        S = eigenvalues(product_Y(X, make_J(1000)))
        assert sup_distance(radial_ecdf(S), LsdModel(0.5)) <= 0.06

    def test_gamma_two(self):
        """(N, n) = (1000, 500): sup distance <= 0.06 including the atom."""
        X = generate_X(MatrixShape(1000, 500), seed=0)
        S = eigenvalues(product_Y(X, make_J(500)))
        assert sup_distance(radial_ecdf(S), LsdModel(2.0)) <= 0.06

"""State-generator contracts: values, determinism, rejection paths."""

import numpy as np
import pytest
from scipy.integrate import quad

import ringvar as rv


class TestMomentumEigenstate:
    def test_uniform_state_amplitude(self):
        dom = rv.PeriodicDomain(2.0 * np.pi, 64)
        psi = rv.momentum_eigenstate(dom, 0)
        np.testing.assert_allclose(
            psi.amplitudes, 1.0 / np.sqrt(2.0 * np.pi), rtol=0, atol=1e-14
        )

    def test_unit_density_for_any_mode(self):
        dom = rv.PeriodicDomain(1.0, 64)
        psi = rv.momentum_eigenstate(dom, 3)
        np.testing.assert_allclose(psi.density(), 1.0, rtol=0, atol=1e-13)

    def test_band_limit_enforced(self):
        dom = rv.PeriodicDomain(1.0, 64)
        with pytest.raises(ValueError):
            rv.momentum_eigenstate(dom, 17)  # beyond N/4 = 16


class TestWrappedGaussian:
    def test_density_variance_matches_unwrapped_quadrature(self):
        # oracle: moments of the unwrapped amplitude profile exp(-x^2/(4 s^2))
        # by adaptive quadrature; tails at +-L/2 are ~1e-2000 for s = L/100
        dom = rv.PeriodicDomain(1.0, 256)
        sigma = 1.0 / 100.0
        norm = quad(lambda x: np.exp(-x * x / (2 * sigma * sigma)), -0.5, 0.5)[0]
        oracle = (
            quad(lambda x: x * x * np.exp(-x * x / (2 * sigma * sigma)), -0.5, 0.5)[0]
            / norm
        )
        psi = rv.wrapped_gaussian(dom, center=0.0, sigma=sigma)
        x = dom.grid
        grid_var = dom.dx * np.sum(x * x * psi.density())
        assert grid_var == pytest.approx(oracle, rel=0.02)
        assert oracle == pytest.approx(sigma**2, rel=1e-12)

    def test_huge_sigma_approaches_uniform(self):
        dom = rv.PeriodicDomain(1.0, 64)
        psi = rv.wrapped_gaussian(dom, center=0.2, sigma=50.0)
        np.testing.assert_allclose(psi.density(), 1.0, rtol=0, atol=1e-8)

    def test_rejects_nonpositive_sigma(self):
        dom = rv.PeriodicDomain(1.0, 64)
        with pytest.raises(ValueError):
            rv.wrapped_gaussian(dom, 0.0, 0.0)

    def test_off_center_peak_location(self):
        dom = rv.PeriodicDomain(1.0, 256)
        psi = rv.wrapped_gaussian(dom, center=-0.3, sigma=0.02)
        assert dom.grid[int(np.argmax(psi.density()))] == pytest.approx(-0.3, abs=dom.dx)


class TestBandLimitedRandom:
    def test_band_structure_is_exact(self, domain_unit):
        psi = rv.band_limited_random(domain_unit, 12, np.random.default_rng(0))
        n = domain_unit.modes
        outside = np.abs(n) > 12
        assert np.all(psi.spectrum[outside] == 0)
        assert np.all(psi.spectrum[~outside] != 0)

    def test_band_limit_quarter_grid(self, domain_unit):
        with pytest.raises(ValueError):
            rv.band_limited_random(domain_unit, 65, np.random.default_rng(0))
        rv.band_limited_random(domain_unit, 64, np.random.default_rng(0))  # N/4 ok


class TestFourierAnsatz:
    def test_round_trip_of_coefficients(self, domain_unit):
        coeffs = np.array([0.2 - 0.1j, 1.0 + 0j, 0.5j])
        psi = rv.fourier_ansatz(domain_unit, coeffs)
        centre = domain_unit.grid_points // 2
        band = psi.spectrum[centre - 1 : centre + 2]
        np.testing.assert_allclose(
            band, coeffs / np.linalg.norm(coeffs), rtol=0, atol=1e-15
        )

    def test_rejects_all_zero_and_even_length(self, domain_unit):
        with pytest.raises(ValueError):
            rv.fourier_ansatz(domain_unit, np.zeros(5, dtype=complex))
        with pytest.raises(ValueError):
            rv.fourier_ansatz(domain_unit, np.ones(4, dtype=complex))


class TestMakeStates:
    def test_deterministic_and_prefix_stable(self, domain_unit):
        spec5 = rv.EnsembleSpec(kind="band_limited_random", count=5, seed=9, band_limit=8)
        spec3 = rv.EnsembleSpec(kind="band_limited_random", count=3, seed=9, band_limit=8)
        a = rv.make_states(spec5, domain_unit)
        b = rv.make_states(spec5, domain_unit)
        c = rv.make_states(spec3, domain_unit)
        for x, y in zip(a, b):
            assert np.array_equal(x.amplitudes, y.amplitudes)
        for x, y in zip(c, a):
            assert np.array_equal(x.amplitudes, y.amplitudes)
        assert not np.allclose(a[0].amplitudes, a[1].amplitudes)

    def test_every_member_is_normalised(self, domain_unit):
        spec = rv.EnsembleSpec(kind="band_limited_random", count=20, seed=1, band_limit=40)
        for psi in rv.make_states(spec, domain_unit):
            assert psi.grid_norm() == pytest.approx(1.0, abs=1e-12)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            rv.EnsembleSpec(kind="nonsense")
        with pytest.raises(ValueError):
            rv.EnsembleSpec(kind="wrapped_gaussian", center=0.0, sigma=-1.0)
        with pytest.raises(ValueError):
            rv.EnsembleSpec(kind="momentum_eigenstate")
        with pytest.raises(ValueError):
            rv.EnsembleSpec(kind="band_limited_random", count=0, band_limit=4)

    def test_band_limit_checked_against_domain(self, domain_unit):
        spec = rv.EnsembleSpec(kind="band_limited_random", count=1, seed=0, band_limit=100)
        with pytest.raises(ValueError):
            rv.make_states(spec, domain_unit)

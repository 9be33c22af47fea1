"""Extremal-search contracts: objective, descent, oracle, determinism."""

import math

import numpy as np
import pytest

import ringvar as rv
from ringvar.search import _structured_starts, full_route_ratio

SMALL = rv.SearchConfig(band_limit=4, restarts=4, max_iterations=300, seed=3)


@pytest.fixture(scope="module")
def domain():
    return rv.PeriodicDomain(2.0 * np.pi, 256)


@pytest.fixture(scope="module")
def small_result(domain):
    return rv.search(domain, SMALL)


class TestObjective:
    def test_narrow_packet_near_heisenberg(self, domain):
        n = np.arange(-8, 9)
        coeffs = np.exp(-((n / 4.0) ** 2)).astype(complex)
        cfg = rv.SearchConfig(band_limit=8)
        value = rv.objective(coeffs, domain, cfg)
        assert value == pytest.approx(1.0, abs=0.05)

    def test_eigenstate_coefficients_get_penalty(self, domain):
        coeffs = np.zeros(17, dtype=complex)
        coeffs[8] = 1.0  # uniform density: bound factor collapses
        value = rv.objective(coeffs, domain, rv.SearchConfig(band_limit=8))
        assert value >= 1e6

    def test_projective_invariance(self, domain):
        rng = np.random.default_rng(8)
        coeffs = rng.standard_normal(9) + 1j * rng.standard_normal(9)
        cfg = rv.SearchConfig(band_limit=4)
        a = rv.objective(coeffs, domain, cfg)
        b = rv.objective(coeffs * (0.3 - 1.9j), domain, cfg)
        assert a == pytest.approx(b, abs=1e-12 * max(1.0, a))

    def test_zero_vector_rejected(self, domain):
        with pytest.raises(ValueError):
            rv.objective(np.zeros(9, dtype=complex), domain, rv.SearchConfig(band_limit=4))

    def test_band_limit_checked(self, domain):
        with pytest.raises(ValueError):
            rv.objective(np.ones(2 * 100 + 1, dtype=complex), domain, rv.SearchConfig())


class TestSearchConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"restarts": 0},
            {"band_limit": 0},
            {"denominator_floor": 0.0},
            {"tolerance": -1.0},
            {"max_iterations": 0},
        ],
    )
    def test_validation(self, kwargs):
        with pytest.raises(ValueError):
            rv.SearchConfig(**kwargs)


class TestSearch:
    def test_finds_sub_heisenberg_scale_optimum(self, small_result):
        # packets already reach ~1.0x; the optimum cannot be worse
        assert 0.0 < small_result.nu_star < 1.2
        assert not small_result.failed

    def test_deterministic(self, domain, small_result):
        again = rv.search(domain, SMALL)
        assert again.nu_star == small_result.nu_star
        assert np.array_equal(
            again.extremal_coefficients, small_result.extremal_coefficients
        )
        assert again.trace == small_result.trace

    def test_extremal_state_reproduces_nu_star(self, domain, small_result):
        # soundness: the returned state is a genuine state; the full pipeline
        # (profile + momentum + report) reproduces the optimum
        psi = rv.fourier_ansatz(domain, small_result.extremal_coefficients)
        report = rv.uncertainty_report(psi)
        assert report.ratio == pytest.approx(small_result.nu_star, abs=1e-8)
        slack = 1e-9 * domain.hbar**2 / 4.0
        assert report.pointwise_min_margin >= -slack

    def test_monotone_in_restarts(self, domain, small_result):
        fewer = rv.search(domain, rv.SearchConfig(
            band_limit=4, restarts=2, max_iterations=300, seed=3))
        assert small_result.nu_star <= fewer.nu_star + 1e-8

    def test_monotone_in_band_limit(self, domain):
        # nested search spaces: a larger band cannot raise the optimum
        lo = rv.search(domain, rv.SearchConfig(band_limit=2, restarts=3, max_iterations=200, seed=1))
        hi = rv.search(domain, rv.SearchConfig(band_limit=4, restarts=3, max_iterations=200, seed=1))
        assert hi.nu_star <= lo.nu_star + 1e-6

    def test_trace_and_diagnostics_shape(self, small_result):
        assert len(small_result.trace) == SMALL.restarts
        assert small_result.evaluations > 0
        assert set(small_result.floor_sensitivity) == {
            SMALL.denominator_floor,
            10 * SMALL.denominator_floor,
            100 * SMALL.denominator_floor,
        }
        assert small_result.comparison["holds"]["0.3"] is True

    def test_structured_starts_prefix_property(self):
        starts = _structured_starts(4)
        assert len(starts) >= 8
        for s in starts:
            assert np.any(s)

    def test_full_route_matches_band_route(self, domain):
        rng = np.random.default_rng(10)
        for _ in range(5):
            coeffs = rng.standard_normal(9) + 1j * rng.standard_normal(9)
            fast = rv.objective(coeffs, domain, rv.SearchConfig(band_limit=4))
            slow = full_route_ratio(coeffs, domain)
            assert fast == pytest.approx(slow, abs=1e-10 * max(1.0, slow))


class TestRandomSearchOracle:
    def test_deterministic_and_batch_invariant(self, domain):
        cfg = rv.SearchConfig(band_limit=4, seed=11)
        a = rv.random_search(domain, cfg, samples=600, batch=128)
        b = rv.random_search(domain, cfg, samples=600, batch=128)
        assert a.best_ratio == b.best_ratio
        assert a.samples == 600

    def test_never_beats_optimizer_materially(self, domain, small_result):
        oracle = rv.random_search(domain, SMALL, samples=3000)
        assert oracle.best_ratio >= small_result.nu_star - 1e-3

    def test_exclusion_counting(self, domain):
        # a tiny band at a huge floor excludes everything
        cfg = rv.SearchConfig(band_limit=1, denominator_floor=0.999999, seed=0)
        res = rv.random_search(domain, cfg, samples=50)
        assert res.exclusions == 50
        assert math.isinf(res.best_ratio)
        assert res.best_coefficients is None

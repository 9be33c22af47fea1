"""Shared fixtures and independent quadrature oracles.

The oracles deliberately avoid the closed-form mode weights used by the
package: they integrate the interpolated density against the window weights
with composite Simpson rule on a refined grid, so an error in the production
path cannot cancel in the check.
"""

import numpy as np
import pytest
from scipy.integrate import simpson

import ringvar as rv


@pytest.fixture(scope="session")
def domain_2pi():
    return rv.PeriodicDomain(2.0 * np.pi, 256)


@pytest.fixture(scope="session")
def domain_unit():
    return rv.PeriodicDomain(1.0, 256)


def quadrature_second_moment(psi, gamma, refine=8):
    """Simpson quadrature of integral f(x + gamma) x^2 dx over the window."""
    L = psi.domain.length
    xs = np.linspace(-L / 2, L / 2, refine * psi.domain.grid_points + 1)
    return float(simpson(rv.density_at(psi, xs + gamma) * xs * xs, x=xs))


def quadrature_first_moment(psi, gamma, refine=8):
    """Simpson quadrature of integral f(x + gamma) x dx over the window."""
    L = psi.domain.length
    xs = np.linspace(-L / 2, L / 2, refine * psi.domain.grid_points + 1)
    return float(simpson(rv.density_at(psi, xs + gamma) * xs, x=xs))


def random_states(domain, count, band_limit, salt=0):
    """Seeded band-limited random states (independent of EnsembleSpec)."""
    return [
        rv.band_limited_random(domain, band_limit, np.random.default_rng([salt, i]))
        for i in range(count)
    ]

"""Seeded families of states: eigenstates, wrapped packets, random bands.

Random members are drawn from per-member child generators keyed by
(spec.seed, member index), so a run is reproducible and a shorter ensemble
is always a prefix of a longer one with the same seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .domain import PeriodicDomain, WaveFunction

KINDS = ("momentum_eigenstate", "wrapped_gaussian", "band_limited_random", "fourier_ansatz")

# image terms of the wrapped packet are added until below this fraction of the peak
_IMAGE_CUTOFF = 1e-16
_MAX_IMAGES = 10000


@dataclass(frozen=True)
class EnsembleSpec:
    """Description of a family of states of one kind.

    Exactly the fields relevant to ``kind`` need to be set:
    ``mode_number`` for momentum_eigenstate, ``center``/``sigma`` for
    wrapped_gaussian, ``band_limit`` for band_limited_random and
    ``coefficients`` (centred, odd length) for fourier_ansatz.
    """

    kind: str
    count: int = 1
    seed: int = 0
    mode_number: Optional[int] = None
    center: Optional[float] = None
    sigma: Optional[float] = None
    band_limit: Optional[int] = None
    coefficients: Optional[Sequence[complex]] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown ensemble kind {self.kind!r}")
        if self.count < 1:
            raise ValueError("count must be a positive integer")
        if self.kind == "momentum_eigenstate" and self.mode_number is None:
            raise ValueError("momentum_eigenstate requires mode_number")
        if self.kind == "wrapped_gaussian":
            if self.center is None or self.sigma is None:
                raise ValueError("wrapped_gaussian requires center and sigma")
            if not (np.isfinite(self.sigma) and self.sigma > 0):
                raise ValueError(f"sigma must be positive, got {self.sigma}")
        if self.kind == "band_limited_random" and self.band_limit is None:
            raise ValueError("band_limited_random requires band_limit")
        if self.kind == "fourier_ansatz":
            if self.coefficients is None or len(self.coefficients) == 0:
                raise ValueError("fourier_ansatz requires a coefficient vector")
            if len(self.coefficients) % 2 != 1:
                raise ValueError("fourier_ansatz coefficients must have odd length (centred)")


def member_rng(seed: int, index: int) -> np.random.Generator:
    """Child generator for one ensemble member (seed may be negative)."""
    return np.random.default_rng([seed & 0xFFFFFFFFFFFFFFFF, index])


def check_band_limit(n_max: int, domain: PeriodicDomain) -> None:
    """Reject bands beyond N/4 (anti-aliasing margin for the density)."""
    if n_max < 0 or n_max > domain.grid_points // 4:
        raise ValueError(
            f"band limit {n_max} outside [0, N/4] = [0, {domain.grid_points // 4}]"
        )


def momentum_eigenstate(domain: PeriodicDomain, n: int) -> WaveFunction:
    """Plane wave exp(2 pi i n x / L) / sqrt(L) sampled on the grid."""
    check_band_limit(abs(int(n)), domain)
    amps = np.exp((2j * np.pi * n / domain.length) * domain.grid) / np.sqrt(domain.length)
    return WaveFunction.from_amplitudes(domain, amps)


def wrapped_gaussian(domain: PeriodicDomain, center: float, sigma: float) -> WaveFunction:
    """Periodic sum of translated Gaussian packets, renormalised on the grid.

    Amplitude width is such that the density has standard deviation sigma for
    sigma << L.  Very large sigma simply approaches the uniform state.
    """
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    u = domain.grid - center
    acc = np.exp(-(u * u) / (4.0 * sigma * sigma))
    for k in range(1, _MAX_IMAGES):
        left = np.exp(-((u - k * domain.length) ** 2) / (4.0 * sigma * sigma))
        right = np.exp(-((u + k * domain.length) ** 2) / (4.0 * sigma * sigma))
        acc = acc + left + right
        if max(left.max(), right.max()) < _IMAGE_CUTOFF * acc.max():
            break
    return WaveFunction.from_amplitudes(domain, acc.astype(np.complex128))


def band_limited_random(domain: PeriodicDomain, n_max: int, rng: np.random.Generator) -> WaveFunction:
    """Complex-Gaussian coefficients on |n| <= n_max, normalised."""
    check_band_limit(n_max, domain)
    n = domain.grid_points
    width = 2 * n_max + 1
    draw = rng.standard_normal(width) + 1j * rng.standard_normal(width)
    c = np.zeros(n, dtype=np.complex128)
    centre = n // 2
    c[centre - n_max : centre + n_max + 1] = draw
    return WaveFunction.from_spectrum(domain, c)


def fourier_ansatz(domain: PeriodicDomain, coefficients) -> WaveFunction:
    """State from a centred coefficient vector c_{-m} .. c_{m}."""
    coeffs = np.asarray(coefficients, dtype=np.complex128)
    if coeffs.ndim != 1 or coeffs.shape[0] % 2 != 1:
        raise ValueError("coefficient vector must be one-dimensional with odd length")
    m = coeffs.shape[0] // 2
    check_band_limit(m, domain)
    if not np.any(coeffs):
        raise ValueError("coefficient vector must not be all zero")
    n = domain.grid_points
    c = np.zeros(n, dtype=np.complex128)
    centre = n // 2
    c[centre - m : centre + m + 1] = coeffs
    return WaveFunction.from_spectrum(domain, c)


def make_states(spec: EnsembleSpec, domain: PeriodicDomain) -> list[WaveFunction]:
    """Generate ``spec.count`` normalised states, deterministically in the seed."""
    states = []
    for index in range(spec.count):
        if spec.kind == "momentum_eigenstate":
            states.append(momentum_eigenstate(domain, spec.mode_number))
        elif spec.kind == "wrapped_gaussian":
            states.append(wrapped_gaussian(domain, spec.center, spec.sigma))
        elif spec.kind == "band_limited_random":
            rng = member_rng(spec.seed, index)
            states.append(band_limited_random(domain, spec.band_limit, rng))
        else:
            states.append(fourier_ansatz(domain, spec.coefficients))
    return states

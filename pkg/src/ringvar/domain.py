"""Periodic coordinate domain and wavefunctions on its uniform grid.

States live on the interval [-L/2, L/2) with periodic identification
psi(-L/2) = psi(L/2), sampled at the N nodes x_j = -L/2 + j L / N.  The
spectral representation uses unit-normalised plane waves:

    psi(x) = (1 / sqrt(L)) * sum_n c_n exp(2 pi i n x / L),   n = -N/2 .. N/2-1

so that the grid norm (L/N) sum |psi(x_j)|^2 equals sum |c_n|^2 exactly
(discrete Parseval).  Everything downstream (translation, interpolation,
momentum statistics, density modes) is defined through this interpolant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True)
class PeriodicDomain:
    """Interval of length L with an even N-point uniform grid and hbar."""

    length: float
    grid_points: int
    hbar: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.length) and self.length > 0):
            raise ValueError(f"domain length must be positive, got {self.length}")
        if self.grid_points < 8 or self.grid_points % 2 != 0:
            raise ValueError(
                f"grid_points must be an even integer >= 8, got {self.grid_points}"
            )
        if not (np.isfinite(self.hbar) and self.hbar > 0):
            raise ValueError(f"hbar must be positive, got {self.hbar}")

    @property
    def dx(self) -> float:
        return self.length / self.grid_points

    @cached_property
    def grid(self) -> np.ndarray:
        """Node positions x_j = -L/2 + j L / N (the node +L/2 is excluded)."""
        x = -0.5 * self.length + np.arange(self.grid_points) * self.dx
        x.flags.writeable = False
        return x

    @cached_property
    def modes(self) -> np.ndarray:
        """Integer mode numbers n = -N/2 .. N/2-1 matching the spectrum order."""
        n = np.arange(-(self.grid_points // 2), self.grid_points // 2)
        n.flags.writeable = False
        return n

    @cached_property
    def momenta(self) -> np.ndarray:
        """Momentum eigenvalues 2 pi hbar n / L for the centred modes."""
        p = 2.0 * np.pi * self.hbar * self.modes / self.length
        p.flags.writeable = False
        return p

    def wrap(self, x):
        """Map coordinates (or shifts) periodically into [-L/2, L/2)."""
        half = 0.5 * self.length
        return np.mod(np.asarray(x) + half, self.length) - half


def _alternating_signs(n: int) -> np.ndarray:
    return 1.0 - 2.0 * (np.arange(n) & 1)


def spectrum_from_amplitudes(amplitudes: np.ndarray, domain: PeriodicDomain) -> np.ndarray:
    """Centred Fourier coefficients c_n of grid samples (modes -N/2..N/2-1)."""
    n = domain.grid_points
    # the grid starts at -L/2, hence the (-1)^k phase relative to a 0-based FFT
    raw = np.fft.fft(amplitudes) * (np.sqrt(domain.length) / n) * _alternating_signs(n)
    return np.fft.fftshift(raw)


def amplitudes_from_spectrum(spectrum: np.ndarray, domain: PeriodicDomain) -> np.ndarray:
    """Grid samples of the interpolant defined by centred coefficients."""
    n = domain.grid_points
    raw = np.fft.ifftshift(spectrum) * _alternating_signs(n)
    return np.fft.ifft(raw) * (n / np.sqrt(domain.length))


@dataclass(frozen=True, eq=False)
class WaveFunction:
    """Normalised complex amplitudes on the grid plus their spectrum.

    Immutable; the spectrum and the density Fourier modes are derived lazily
    and cached.  Constructors normalise, so the grid norm is 1 to roundoff.
    """

    domain: PeriodicDomain
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (self.domain.grid_points,):
            raise ValueError(
                f"expected {self.domain.grid_points} amplitudes, got shape {amps.shape}"
            )
        norm = self.domain.dx * np.sum(np.abs(amps) ** 2)
        if abs(norm - 1.0) > NORMALIZATION_TOL:
            raise ValueError(f"state is not normalised: grid norm {norm!r}")
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, domain: PeriodicDomain, values) -> "WaveFunction":
        """Build a state from (not necessarily normalised) grid samples."""
        amps = np.asarray(values, dtype=np.complex128)
        norm = domain.dx * np.sum(np.abs(amps) ** 2)
        if not np.isfinite(norm) or norm <= 0.0:
            raise ValueError("cannot normalise a zero or non-finite amplitude vector")
        return cls(domain, amps / np.sqrt(norm))

    @classmethod
    def from_spectrum(cls, domain: PeriodicDomain, coefficients) -> "WaveFunction":
        """Build a state from centred Fourier coefficients (length N).

        The supplied coefficients (after normalisation) are installed as the
        cached spectrum, so exact zeros in the band structure are preserved.
        """
        c = np.asarray(coefficients, dtype=np.complex128)
        if c.shape != (domain.grid_points,):
            raise ValueError(
                f"expected {domain.grid_points} coefficients, got shape {c.shape}"
            )
        norm = np.sum(np.abs(c) ** 2)
        if not np.isfinite(norm) or norm <= 0.0:
            raise ValueError("cannot normalise a zero or non-finite spectrum")
        c = c / np.sqrt(norm)
        psi = cls(domain, amplitudes_from_spectrum(c, domain))
        c.flags.writeable = False
        psi.__dict__["spectrum"] = c
        return psi

    @cached_property
    def spectrum(self) -> np.ndarray:
        c = spectrum_from_amplitudes(self.amplitudes, self.domain)
        c.flags.writeable = False
        return c

    @cached_property
    def density_modes(self) -> np.ndarray:
        """Half-spectrum F_m (m >= 0) of the density f = |psi|^2.

        F_m = (1/L) sum_n c_n conj(c_{n-m}); exact zero coefficients outside
        the occupied band are trimmed first so band-limited states stay cheap.
        """
        c = self.spectrum
        occupied = np.flatnonzero(c)
        band = c[occupied[0] : occupied[-1] + 1]
        corr = np.correlate(band, band, mode="full")
        fm = corr[band.shape[0] - 1 :] / self.domain.length
        fm.flags.writeable = False
        return fm

    def density(self) -> np.ndarray:
        """Grid samples of |psi|^2."""
        return np.abs(self.amplitudes) ** 2

    def grid_norm(self) -> float:
        return float(self.domain.dx * np.sum(self.density()))


def translate(psi: WaveFunction, shift: float) -> WaveFunction:
    """Exact spectral translation x -> x + shift.

    Multiplies coefficient n by exp(2 pi i n shift / L); a zero shift returns
    the spectrum bit-for-bit.  The shift is wrapped into [-L/2, L/2).
    """
    domain = psi.domain
    a = float(domain.wrap(shift))
    phases = np.exp((2j * np.pi * a / domain.length) * domain.modes)
    c = psi.spectrum * phases
    shifted = WaveFunction(domain, amplitudes_from_spectrum(c, domain))
    c.flags.writeable = False
    shifted.__dict__["spectrum"] = c
    return shifted


def interpolate(psi: WaveFunction, x):
    """Band-limited interpolant psi(x) at arbitrary (wrapped) coordinates."""
    domain = psi.domain
    xs = np.atleast_1d(np.asarray(domain.wrap(x), dtype=np.float64))
    phases = np.exp((2j * np.pi / domain.length) * np.outer(xs, domain.modes))
    values = phases @ psi.spectrum / np.sqrt(domain.length)
    return values if np.ndim(x) else complex(values[0])


def density_at(psi: WaveFunction, x):
    """|psi(x)|^2 through the spectral interpolant, periodically wrapped."""
    values = interpolate(psi, x)
    out = np.abs(values) ** 2
    return out if np.ndim(x) else float(out)

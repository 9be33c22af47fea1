"""Pure-numpy implementation of the windowed-variance kernel.

The density of a state on a periodic domain of length L is a trigonometric
polynomial f(x) = F_0 + sum_{m>=1} 2 Re[F_m exp(2 pi i m x / L)].  Weighting f
against the fixed window moments of x and x^2 over [-L/2, L/2) gives closed
forms for the shifted second moment

    V(g)   = F_0 L^3/12 + sum_{m>=1} 2 Re[F_m e^{i m phi}] (-1)^m L^3/(2 pi^2 m^2)
    V'(g)  = -2 sum_{m>=1} (-1)^m (L^2 / (pi m)) Im[F_m e^{i m phi}]
    V''(g) = 2 (1 - L f(L/2 + g))

with phi = 2 pi g / L.  All kernel entry points take the half-spectrum
``fm[m] = F_m`` for m = 0..M (F_0 is 1/L for a normalised state) and are exact
up to roundoff; no quadrature grid enters.

`profile_curves` samples the three curves on the uniform shift grid
g_k = -L/2 + k L / R.  There e^{i m phi_k} = (-1)^m e^{2 pi i m k / R}, the
alternating signs cancel, and each curve is a length-R inverse DFT of the
mode coefficients folded modulo R (folding is exact: it is sampling, not
truncation).
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"

# Newton iteration stops when |V'| drops below SLOPE_TOL_SCALE * L.
SLOPE_TOL_SCALE = 1e-10


def _fold(modes: np.ndarray, resolution: int) -> np.ndarray:
    """Fold mode coefficients (m = 1..M) into a length-R DFT spectrum."""
    out = np.zeros(resolution, dtype=np.complex128)
    idx = np.arange(1, modes.shape[0] + 1) % resolution
    np.add.at(out, idx, modes)
    return out


def profile_curves(fm, length, resolution):
    """Sample V, V', V'' on the uniform shift grid of the given resolution.

    Returns three float arrays of length ``resolution``; sample k sits at
    shift -L/2 + k L / resolution.
    """
    fm = np.asarray(fm, dtype=np.complex128)
    L = float(length)
    R = int(resolution)
    M = fm.shape[0] - 1
    f0 = fm[0].real

    if M < 1:
        values = np.full(R, f0 * L**3 / 12.0)
        slopes = np.zeros(R)
        curvatures = np.full(R, 2.0 - 2.0 * L * f0)
        return values, slopes, curvatures

    m = np.arange(1, M + 1, dtype=np.float64)
    value_modes = fm[1:] * (L**3 / (2.0 * np.pi**2)) / (m * m)
    slope_modes = fm[1:] * (2.0 * L * L / np.pi) / m

    sum_value = R * np.fft.ifft(_fold(value_modes, R))
    sum_slope = R * np.fft.ifft(_fold(slope_modes, R))
    sum_dens = R * np.fft.ifft(_fold(fm[1:], R))

    values = f0 * L**3 / 12.0 + 2.0 * sum_value.real
    slopes = -sum_slope.imag
    curvatures = 2.0 - 2.0 * L * (f0 + 2.0 * sum_dens.real)
    return values, slopes, curvatures


def point_eval(fm, length, gamma):
    """Evaluate (V, V', V'') at one arbitrary shift."""
    fm = np.asarray(fm, dtype=np.complex128)
    L = float(length)
    M = fm.shape[0] - 1
    f0 = fm[0].real
    if M < 1:
        return f0 * L**3 / 12.0, 0.0, 2.0 - 2.0 * L * f0

    m = np.arange(1, M + 1, dtype=np.float64)
    sign = 1.0 - 2.0 * (np.arange(1, M + 1) & 1)
    z = fm[1:] * np.exp((2j * np.pi * gamma / L) * m)

    value = f0 * L**3 / 12.0 + (L**3 / np.pi**2) * np.sum(sign * z.real / (m * m))
    slope = -(2.0 * L * L / np.pi) * np.sum(sign * z.imag / m)
    density = f0 + 2.0 * np.sum(sign * z.real)
    curvature = 2.0 - 2.0 * L * density
    return float(value), float(slope), float(curvature)


def refine_minimum(fm, length, gamma0, half_width, max_steps=100):
    """Polish a scan minimum of V with Newton steps on the exact derivatives.

    The true minimiser is assumed to lie within ``half_width`` of ``gamma0``
    (one scan cell on each side).  Newton steps use V'' when it is positive
    and stay inside the cell; otherwise the slope sign change is bisected.
    Returns ``(gamma, value, steps, converged)`` where ``converged`` means
    |V'| < 1e-10 L was reached; on failure the best point seen is returned.
    """
    fm = np.asarray(fm, dtype=np.complex128)
    L = float(length)
    tol = SLOPE_TOL_SCALE * L

    lo = gamma0 - half_width
    hi = gamma0 + half_width
    slope_lo = point_eval(fm, L, lo)[1]
    slope_hi = point_eval(fm, L, hi)[1]
    bracketed = slope_lo <= 0.0 <= slope_hi
    a, b = lo, hi

    g = gamma0
    value, slope, curvature = point_eval(fm, L, g)
    best_g, best_v = g, value
    steps = 0

    while abs(slope) >= tol and steps < max_steps:
        steps += 1
        g_new = g - slope / curvature if curvature > 0.0 else np.inf
        if not (lo <= g_new <= hi):
            if not bracketed:
                break
            g_new = 0.5 * (a + b)
        if g_new == g or g_new == a or g_new == b:
            break  # roundoff floor: no representable progress
        g = g_new
        value, slope, curvature = point_eval(fm, L, g)
        if value < best_v:
            best_g, best_v = g, value
        if bracketed:
            if slope < 0.0:
                a = g
            else:
                b = g

    if abs(slope) < tol:
        return g, value, steps, True
    return best_g, best_v, steps, False

"""Uncertainty-product bounds and margins for one periodic state.

Three layers are checked, all with signed margins (positive = satisfied):

* the exact shiftwise bound  dp^2 V(g) >= (hbar^2/4) (1 - L f(L/2+g))^2,
  which holds identically for every normalised periodic state;
* the repaired product bound dp dx >= (nu hbar / 2)(1 - 12 dx^2 / L^2) for a
  trial constant nu, where dx is the translation-invariant spread;
* the unmodified Heisenberg product hbar/2, which periodic states may
  legitimately undershoot; reported as information, never as an error.

The boundary density in the shiftwise bound is (1 - L f(L/2+g)) = V''(g)/2,
so the margins reuse the profile curvatures; the identity itself is covered
by tests against the interpolated density.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .domain import WaveFunction
from .momentum import MomentumStats, momentum_stats
from .variance import VarianceProfile, variance_profile

# the bound factor 1 - 12 dx^2 / L^2 vanishes for saturating states; below
# this guard the dimensionless ratio is reported as undefined
RATIO_GUARD = 1e-8

# roundoff slack for the exact shiftwise bound, in units of hbar^2/4
POINTWISE_SLACK = 1e-9

# structural-bound slack (dimensionless; scaled by powers of L where needed)
BOUND_SLACK = 1e-10

# relative tolerance on the period average of V against L^2/12
MEAN_IDENTITY_RTOL = 1e-9

ANGULAR_ETA = 0.15


def pointwise_bound_margins(
    profile: VarianceProfile, stats: MomentumStats
) -> np.ndarray:
    """Signed margins dp^2 V(g) - (hbar^2/4)(1 - L f(L/2+g))^2 per grid shift."""
    hbar = profile.domain.hbar
    boundary = 0.5 * profile.curvatures  # = 1 - L f(L/2 + gamma), exactly
    return stats.delta_p_sq * profile.values - (hbar * hbar / 4.0) * boundary**2


def verify_pointwise_bound(psi: WaveFunction, profile: VarianceProfile) -> float:
    """Minimum shiftwise margin over the profile grid (>= -1e-9 hbar^2/4)."""
    return float(pointwise_bound_margins(profile, momentum_stats(psi)).min())


@dataclass(frozen=True)
class BoundsCheck:
    """Structural-bound and period-average results for one profile."""

    value_min: float
    value_max: float
    slope_min: float
    slope_max: float
    curvature_max: float
    mean_rel_err: float

    @property
    def ok(self) -> bool:
        return (
            self.value_min >= -BOUND_SLACK
            and self.value_max <= 0.25 + BOUND_SLACK
            and self.slope_min >= -(1.0 + BOUND_SLACK)
            and self.slope_max < 1.0 + BOUND_SLACK
            and self.curvature_max <= 2.0 + BOUND_SLACK
            and abs(self.mean_rel_err) <= MEAN_IDENTITY_RTOL
        )


def check_structural_bounds(profile: VarianceProfile) -> BoundsCheck:
    """Scale-free structural bounds: V/L^2 in [0, 1/4], V'/L in [-1, 1), V'' <= 2,
    and the period average of V against L^2/12."""
    L = profile.domain.length
    mean = float(np.mean(profile.values))
    return BoundsCheck(
        value_min=float(profile.values.min()) / (L * L),
        value_max=float(profile.values.max()) / (L * L),
        slope_min=float(profile.slopes.min()) / L,
        slope_max=float(profile.slopes.max()) / L,
        curvature_max=float(profile.curvatures.max()),
        mean_rel_err=mean / (L * L / 12.0) - 1.0,
    )


@dataclass(frozen=True)
class UncertaintyReport:
    """All uncertainty statistics and margins for one state."""

    length: float
    hbar: float
    gamma_star: float
    delta_x_sq: float
    delta_x: float
    delta_p: float
    product: float
    bound_factor: float  # 1 - 12 delta_x_sq / L^2
    heisenberg_rhs: float
    heisenberg_margin: float
    pointwise_min_margin: float
    ratio: Optional[float]  # product / ((hbar/2) bound_factor); None if guarded
    saturated: bool  # bound factor below the ratio guard
    aliasing_warning: bool
    converged: bool

    def eup_rhs(self, nu: float) -> float:
        """(nu hbar / 2) (1 - 12 delta_x_sq / L^2) for a trial constant nu."""
        return 0.5 * nu * self.hbar * self.bound_factor

    def eup_margin(self, nu: float) -> float:
        return self.product - self.eup_rhs(nu)


def uncertainty_report(
    psi: WaveFunction,
    resolution: int | None = None,
    profile: VarianceProfile | None = None,
) -> UncertaintyReport:
    """Assemble the full report for one state (profile computed if absent)."""
    if profile is None:
        profile = variance_profile(psi, resolution)
    stats = momentum_stats(psi)
    domain = psi.domain
    L = domain.length

    delta_x = float(np.sqrt(profile.delta_x_sq))
    delta_p = stats.delta_p
    product = delta_p * delta_x
    bound_factor = 1.0 - 12.0 * profile.delta_x_sq / (L * L)
    heisenberg_rhs = 0.5 * domain.hbar
    saturated = bound_factor < RATIO_GUARD
    ratio = None if saturated else product / (heisenberg_rhs * bound_factor)

    return UncertaintyReport(
        length=L,
        hbar=domain.hbar,
        gamma_star=profile.gamma_star,
        delta_x_sq=profile.delta_x_sq,
        delta_x=delta_x,
        delta_p=delta_p,
        product=product,
        bound_factor=bound_factor,
        heisenberg_rhs=heisenberg_rhs,
        heisenberg_margin=product - heisenberg_rhs,
        pointwise_min_margin=float(
            pointwise_bound_margins(profile, stats).min()
        ),
        ratio=ratio,
        saturated=saturated,
        aliasing_warning=stats.aliasing_warning,
        converged=profile.converged,
    )


def verify_eup(
    psi: WaveFunction,
    profile: VarianceProfile,
    nu: float,
) -> float:
    """Signed margin of the product bound at trial constant nu."""
    if nu <= 0:
        raise ValueError(f"nu must be positive, got {nu}")
    report = uncertainty_report(psi, profile=profile)
    return report.eup_margin(nu)


@dataclass(frozen=True)
class AngularReport:
    """The length-2pi report relabelled to angle / angular momentum."""

    report: UncertaintyReport
    eta: float

    @property
    def delta_phi(self) -> float:
        return self.report.delta_x

    @property
    def delta_phi_sq(self) -> float:
        return self.report.delta_x_sq

    @property
    def delta_lz(self) -> float:
        return self.report.delta_p

    @property
    def rhs(self) -> float:
        """eta hbar (1 - 3 delta_phi^2 / pi^2); the factor equals the
        product-bound factor because 12/L^2 = 3/pi^2 at L = 2 pi."""
        return self.eta * self.report.hbar * self.report.bound_factor

    @property
    def margin(self) -> float:
        return self.report.product - self.rhs


def angular_case_report(
    psi: WaveFunction,
    resolution: int | None = None,
    eta: float = ANGULAR_ETA,
) -> AngularReport:
    """Report for a state on an angle domain (length must be 2 pi)."""
    L = psi.domain.length
    if abs(L - 2.0 * np.pi) > 1e-12 * 2.0 * np.pi:
        raise ValueError(f"angular report requires domain length 2*pi, got {L}")
    return AngularReport(report=uncertainty_report(psi, resolution), eta=eta)

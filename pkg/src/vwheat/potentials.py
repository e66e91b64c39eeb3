"""Singular potentials and their mollifier regularizations.

A potential is described symbolically (zero, a point mass, its square, or
a bounded profile) and turned into grid samples at a regularization
parameter epsilon through a kernel scale omega(epsilon). Moderateness of
the resulting net is measured by a log-log fit of sup norms against
1/omega.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    DegenerateFitError,
    InsufficientDataError,
    InvalidEpsilonError,
    PlacementError,
)

POTENTIAL_KINDS = ("zero", "dirac", "dirac_squared", "bounded")
SCHEDULE_KINDS = ("linear", "logarithmic")


@dataclass(frozen=True)
class OmegaSchedule:
    """Mapping from epsilon to the kernel scale omega.

    ``linear`` uses omega = epsilon. ``logarithmic`` uses
    omega = (N0 * log(1/epsilon))^(-1/N0), which shrinks slowly enough
    that exponentially singular nets stay moderate.
    """

    kind: str = "linear"
    N0: int = 1

    def __post_init__(self):
        if self.kind not in SCHEDULE_KINDS:
            raise ValueError(f"unknown schedule kind {self.kind!r}")
        if self.N0 < 1:
            raise ValueError("N0 must be a positive integer")


def omega_of_eps(schedule: OmegaSchedule, eps: float) -> float:
    """Kernel scale for a given epsilon.

    Raises
    ------
    InvalidEpsilonError
        If eps is outside (0, 1], or equals 1 under the logarithmic
        schedule (where the scale would be infinite).
    """
    if not (isinstance(eps, (int, float)) and math.isfinite(eps)) or not 0.0 < eps <= 1.0:
        raise InvalidEpsilonError(f"epsilon must lie in (0, 1], got {eps!r}")
    if schedule.kind == "linear":
        return float(eps)
    if eps == 1.0:
        raise InvalidEpsilonError("logarithmic schedule needs epsilon < 1")
    return float((schedule.N0 * math.log(1.0 / eps)) ** (-1.0 / schedule.N0))


@dataclass(frozen=True, eq=False)
class PotentialSpec:
    """Symbolic description of a potential before regularization.

    ``x0`` locates point-mass kinds, ``strength`` scales them,
    ``profile`` carries grid samples for the bounded kind, and ``sign``
    selects dissipation (+1) or growth (-1) in the equation.
    """

    kind: str
    x0: float | None = None
    strength: float = 1.0
    profile: np.ndarray | None = None
    sign: int = 1

    def __post_init__(self):
        if self.kind not in POTENTIAL_KINDS:
            raise ValueError(f"unknown potential kind {self.kind!r}")
        if self.sign not in (-1, 1):
            raise ValueError("sign must be +1 or -1")
        if not (math.isfinite(self.strength) and self.strength >= 0.0):
            raise ValueError("strength must be a finite nonnegative number")
        if self.kind in ("dirac", "dirac_squared") and self.x0 is None:
            raise ValueError(f"{self.kind} potential needs a location x0")
        if self.kind == "bounded" and self.profile is None:
            raise ValueError("bounded potential needs a sample profile")

    def same_family(self, other: "PotentialSpec") -> bool:
        """Whether two specs describe the same potential (net membership)."""
        if (self.kind, self.x0, self.strength, self.sign) != (
            other.kind,
            other.x0,
            other.strength,
            other.sign,
        ):
            return False
        if self.profile is None and other.profile is None:
            return True
        if self.profile is None or other.profile is None:
            return False
        return np.array_equal(self.profile, other.profile)


@dataclass(frozen=True, eq=False)
class RegularizedPotential:
    """Grid samples of a potential at one point of the regularization net.

    ``epsilon`` and ``omega`` are None for exact sample carriers that do
    not belong to a net (such as the unregularized bounded reference).
    """

    samples: np.ndarray
    epsilon: float | None
    omega: float | None
    sup_norm: float
    spec: PotentialSpec


def exact_potential(samples: np.ndarray, spec: PotentialSpec) -> RegularizedPotential:
    """Wrap raw samples as a potential without a net parameter."""
    samples = np.asarray(samples, dtype=float)
    return RegularizedPotential(
        samples=samples,
        epsilon=None,
        omega=None,
        sup_norm=float(np.max(np.abs(samples))) if samples.size else 0.0,
        spec=spec,
    )


def regularize(
    spec: PotentialSpec,
    kernel: kernels.MollifierKernel,
    schedule: OmegaSchedule,
    eps: float,
    grid,
) -> RegularizedPotential:
    """Sample the regularized potential on the interior grid.

    Point masses are evaluated analytically through the scaled kernel;
    the squared kind squares the strength-weighted kernel values; bounded
    profiles are mollified by discrete convolution with zero extension.

    Parameters
    ----------
    spec : PotentialSpec
    kernel : MollifierKernel
    schedule : OmegaSchedule
    eps : float
        Net parameter in (0, 1].
    grid
        Provides ``x_interior``, ``dx``, ``a`` and ``b``.

    Raises
    ------
    PlacementError
        If a point-mass location is not strictly inside the domain.
    """
    omega = omega_of_eps(schedule, eps)
    x = grid.x_interior
    if spec.kind == "zero":
        samples = np.zeros_like(x)
    elif spec.kind in ("dirac", "dirac_squared"):
        if not grid.a < spec.x0 < grid.b:
            raise PlacementError(
                f"potential location {spec.x0} outside the open domain "
                f"({grid.a}, {grid.b})"
            )
        view = kernels.scale(kernel, omega)
        samples = spec.strength * kernels.eval_scaled(view, x - spec.x0)
        if spec.kind == "dirac_squared":
            samples = samples ** 2
    else:
        profile = np.asarray(spec.profile, dtype=float)
        if profile.shape != x.shape:
            raise ValueError(
                f"bounded profile length {profile.size} does not match grid ({x.size})"
            )
        view = kernels.scale(kernel, omega)
        samples = kernels.mollify(profile, view, grid.dx)
    return RegularizedPotential(
        samples=samples,
        epsilon=float(eps),
        omega=omega,
        sup_norm=float(np.max(np.abs(samples))) if samples.size else 0.0,
        spec=spec,
    )


@dataclass(frozen=True)
class ModeratenessFit:
    """Result of the log-log moderateness fit over a regularization net."""

    exponent: float
    r_squared: float
    epsilons: tuple[float, ...]
    omegas: tuple[float, ...]
    sup_norms: tuple[float, ...]
    bounded_net: bool = False

    def as_dict(self) -> dict:
        return {
            "exponent": self.exponent,
            "r_squared": self.r_squared,
            "epsilons": list(self.epsilons),
            "omegas": list(self.omegas),
            "sup_norms": list(self.sup_norms),
            "bounded_net": self.bounded_net,
        }


def _loglog_slope(xs: np.ndarray, ys: np.ndarray) -> tuple[float, float]:
    """Least-squares slope and r^2 of ys against xs (already log scaled)."""
    slope, intercept = np.polyfit(xs, ys, 1)
    pred = slope * xs + intercept
    ss_res = float(np.sum((ys - pred) ** 2))
    ss_tot = float(np.sum((ys - ys.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return float(slope), r2


def fit_moderateness_exponent(net) -> ModeratenessFit:
    """Fit the growth exponent of sup norms against 1/omega over a net.

    The slope of log(sup_norm) on log(1/omega) estimates the moderateness
    exponent: 1 for a point mass, 2 for its square, 0 for bounded data.
    A net of zero potentials short-circuits to exponent 0 with the
    ``bounded_net`` flag set.

    Raises
    ------
    InsufficientDataError
        Fewer than three distinct epsilon values, or mixed specs.
    DegenerateFitError
        A nonpositive sup norm for a kind that needs the log fit.
    """
    net = list(net)
    if len(net) < 3:
        raise InsufficientDataError("moderateness fit needs at least 3 net points")
    eps = tuple(p.epsilon for p in net)
    if len(set(eps)) != len(eps) or any(e is None for e in eps):
        raise InsufficientDataError("net points must carry distinct epsilon values")
    spec0 = net[0].spec
    if not all(p.spec.same_family(spec0) for p in net[1:]):
        raise InsufficientDataError("net mixes different potential specs")
    omegas = tuple(p.omega for p in net)
    sups = tuple(p.sup_norm for p in net)
    if spec0.kind == "zero":
        return ModeratenessFit(
            exponent=0.0,
            r_squared=1.0,
            epsilons=eps,
            omegas=omegas,
            sup_norms=sups,
            bounded_net=True,
        )
    if any(s <= 0.0 for s in sups):
        raise DegenerateFitError("sup norms must be positive for the log-log fit")
    slope, r2 = _loglog_slope(np.log(1.0 / np.asarray(omegas)), np.log(np.asarray(sups)))
    return ModeratenessFit(
        exponent=slope,
        r_squared=r2,
        epsilons=eps,
        omegas=omegas,
        sup_norms=sups,
    )

"""Mollifier kernels: the standard bump, moment-vanishing combinations,
scale views and grid mollification.

Kernels are stored as dense samples on a fine symmetric grid over
[-support_radius, support_radius]. Derivatives are iterated central
differences on that grid, point evaluation is linear interpolation, and
moments use composite Simpson quadrature. The sample count is odd so the
grid contains 0 and is exactly symmetric, which keeps even profiles
bitwise symmetric.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateKernelError,
    InvalidScaleError,
    UnderResolvedKernelWarning,
    UnsupportedOrderError,
)

N_FINE = 2 ** 14 + 1
MAX_MOMENT_ORDER = 8
MAX_DERIVATIVE_ORDER = 6


def _simpson(values: np.ndarray, h: float) -> float:
    """Composite Simpson rule over uniformly spaced samples (odd count)."""
    if values.size % 2 == 0:
        raise ValueError("Simpson rule needs an odd number of samples")
    acc = values[0] + values[-1] + 4.0 * values[1:-1:2].sum() + 2.0 * values[2:-1:2].sum()
    return float(acc * h / 3.0)


@dataclass(frozen=True, eq=False)
class MollifierKernel:
    """A compactly supported smoothing kernel held as dense samples.

    Attributes
    ----------
    samples : ndarray
        Profile values on the internal grid; endpoints are exactly zero.
    support_radius : float
        Half-width of the support interval.
    normalization_constant : float
        Constant that scaled the raw profile to unit mass.
    nonneg : bool
        Whether every sample is nonnegative.
    vanish_coefficients : tuple or None
        Derivative-combination coefficients when the kernel came out of
        :func:`vanish_moments`, else None.
    """

    samples: np.ndarray
    support_radius: float
    normalization_constant: float
    nonneg: bool
    vanish_coefficients: tuple[float, ...] | None = None
    _moment_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def internal_grid(self) -> np.ndarray:
        """Sample locations, exactly symmetric about zero."""
        half = (self.samples.size - 1) // 2
        return self.support_radius * (np.arange(-half, half + 1) / half)

    @property
    def internal_spacing(self) -> float:
        half = (self.samples.size - 1) // 2
        return self.support_radius / half


def make_standard_bump(n_fine: int = N_FINE) -> MollifierKernel:
    """Build the unit-mass bump exp(1/(x^2 - 1)) on (-1, 1).

    Parameters
    ----------
    n_fine : int
        Number of internal samples, odd so the grid contains 0.

    Returns
    -------
    MollifierKernel
        Nonnegative even kernel with unit discrete mass.
    """
    if n_fine < 3 or n_fine % 2 == 0:
        raise ValueError("n_fine must be odd and at least 3")
    half = (n_fine - 1) // 2
    x = np.arange(-half, half + 1) / half
    raw = np.zeros(n_fine)
    inner = np.abs(x) < 1.0
    raw[inner] = np.exp(1.0 / (x[inner] ** 2 - 1.0))
    c = 1.0 / _simpson(raw, 1.0 / half)
    return MollifierKernel(
        samples=c * raw,
        support_radius=1.0,
        normalization_constant=c,
        nonneg=True,
    )


def moment(kernel: MollifierKernel, order: int, max_order: int = MAX_MOMENT_ORDER) -> float:
    """k-th moment of the kernel profile by Simpson quadrature, cached.

    Raises
    ------
    UnsupportedOrderError
        If ``order`` is negative or exceeds ``max_order``.
    """
    if not 0 <= order <= max_order:
        raise UnsupportedOrderError(f"moment order {order} outside [0, {max_order}]")
    cached = kernel._moment_cache.get(order)
    if cached is None:
        x = kernel.internal_grid()
        cached = _simpson(x ** order * kernel.samples, kernel.internal_spacing)
        kernel._moment_cache[order] = cached
    return cached


def derivative(
    kernel: MollifierKernel, order: int, max_order: int = MAX_DERIVATIVE_ORDER
) -> np.ndarray:
    """Iterated central-difference derivative samples on the internal grid.

    Endpoints are clamped to zero, which is exact for compactly supported
    profiles. Returns a plain sample array, not a kernel: derivatives have
    zero mass and are only meaningful as building blocks.
    """
    if not 1 <= order <= max_order:
        raise UnsupportedOrderError(f"derivative order {order} outside [1, {max_order}]")
    h = kernel.internal_spacing
    out = kernel.samples
    for _ in range(order):
        nxt = np.zeros_like(out)
        nxt[1:-1] = (out[2:] - out[:-2]) / (2.0 * h)
        out = nxt
    return out


def vanish_moments(kernel: MollifierKernel, n: int) -> MollifierKernel:
    """Combine the kernel with its derivatives to kill moments 1..n.

    Solves the lower-triangular system expressing that the combination
    profile + sum_j a_j * profile^(j) keeps unit mass while its moments of
    orders 1..n vanish. The j-th derivative contributes
    (-1)^j * k!/(k-j)! * m_{k-j} to the order-k moment, so the diagonal is
    (-1)^k * k! * m_0 and forward substitution applies.

    Raises
    ------
    UnsupportedOrderError
        If ``n`` exceeds the derivative or moment order cap.
    DegenerateKernelError
        If the input mass is too small to normalize against.
    """
    cap = min(MAX_DERIVATIVE_ORDER, MAX_MOMENT_ORDER)
    if not 1 <= n <= cap:
        raise UnsupportedOrderError(f"vanishing order {n} outside [1, {cap}]")
    m = [moment(kernel, j) for j in range(n + 1)]
    if abs(m[0]) < 1e-12:
        raise DegenerateKernelError(
            "kernel mass too small to build a unit-mass combination",
            condition_estimate=math.inf,
        )
    coeffs = [1.0 / m[0]]
    for k in range(1, n + 1):
        diag = (-1.0) ** k * math.factorial(k) * m[0]
        acc = 0.0
        for j in range(k):
            entry = (-1.0) ** j * math.factorial(k) / math.factorial(k - j) * m[k - j]
            acc += coeffs[j] * entry
        coeffs.append(-acc / diag)
    profile = coeffs[0] * kernel.samples.copy()
    for j in range(1, n + 1):
        if coeffs[j] != 0.0:
            profile += coeffs[j] * derivative(kernel, j)
    return MollifierKernel(
        samples=profile,
        support_radius=kernel.support_radius,
        normalization_constant=kernel.normalization_constant,
        nonneg=bool(np.all(profile >= 0.0)),
        vanish_coefficients=tuple(coeffs),
    )


@dataclass(frozen=True, eq=False)
class ScaledKernelView:
    """A kernel viewed at scale omega: x -> profile(x / omega) / omega."""

    base: MollifierKernel
    omega: float

    def __post_init__(self):
        if not (isinstance(self.omega, (int, float)) and math.isfinite(self.omega)) or self.omega <= 0:
            raise InvalidScaleError(f"scale must be positive and finite, got {self.omega!r}")

    @property
    def support_radius(self) -> float:
        return self.omega * self.base.support_radius


def scale(kernel: MollifierKernel, omega: float) -> ScaledKernelView:
    """View the kernel at scale omega without copying samples."""
    return ScaledKernelView(base=kernel, omega=float(omega))


def eval_scaled(view: ScaledKernelView, x):
    """Evaluate the scaled kernel at x by linear interpolation.

    Vanishes exactly for |x| >= omega * support_radius. Accepts scalars
    or arrays; the return type matches.
    """
    base = view.base
    y = np.asarray(x, dtype=float) / view.omega
    vals = np.interp(y, base.internal_grid(), base.samples, left=0.0, right=0.0) / view.omega
    if np.isscalar(x) or getattr(x, "ndim", 1) == 0:
        return float(vals)
    return vals


def mollify(f: np.ndarray, view: ScaledKernelView, dx: float) -> np.ndarray:
    """Discrete mollification of a grid function, zero-extended at the ends.

    Parameters
    ----------
    f : ndarray
        Function values on a uniform grid with spacing ``dx``.
    view : ScaledKernelView
        Scaled kernel to convolve with.
    dx : float
        Grid spacing; also the quadrature weight of the convolution sum.

    Returns
    -------
    ndarray
        Samples of (f * kernel) on the same grid.

    Warns
    -----
    UnderResolvedKernelWarning
        When ``dx`` exceeds the scaled support radius, so the kernel is
        sampled by fewer than one point per half-width.
    """
    if dx <= 0:
        raise ValueError("dx must be positive")
    radius = view.support_radius
    if dx > radius:
        warnings.warn(
            f"grid spacing {dx} exceeds scaled kernel radius {radius}; "
            "mollification is under-resolved",
            UnderResolvedKernelWarning,
            stacklevel=2,
        )
    m = int(math.ceil(radius / dx))
    offsets = np.arange(-m, m + 1) * dx
    weights = eval_scaled(view, offsets)
    full = np.convolve(np.asarray(f, dtype=float), weights)
    return dx * full[m:m + f.size]

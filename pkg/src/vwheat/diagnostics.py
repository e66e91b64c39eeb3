"""Discrete norms, the energy functional, and certificate checks.

Each check returns an EnergyReport rather than raising, so harnesses can
collect verdicts across runs. Norms follow the solver's stencil exactly:
the H1 seminorm includes both wall differences of the Dirichlet closure,
which is what makes the discrete energy identity hold to rounding.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_TINY = 1e-300


def discrete_l2(u: np.ndarray, dx: float) -> float:
    """sqrt(dx * sum u_i^2) over the interior grid."""
    u = np.asarray(u, dtype=float)
    return float(np.sqrt(dx * np.sum(u * u)))


def discrete_h1_seminorm(u: np.ndarray, dx: float) -> float:
    """Forward-difference seminorm with zero walls appended on both sides."""
    u = np.asarray(u, dtype=float)
    d = np.diff(u, prepend=0.0, append=0.0) / dx
    return float(np.sqrt(dx * np.sum(d * d)))


def energy_functional(u: np.ndarray, q: np.ndarray, dx: float) -> float:
    """H1 seminorm squared plus the potential quadrature dx * sum(q u^2).

    Defined for nonnegative potentials only; there the value equals the
    quadratic form of the scheme's spatial operator and decays step to
    step under the implicit scheme.

    Raises
    ------
    ValueError
        If any potential sample is negative.
    """
    q = np.asarray(q, dtype=float)
    if q.size and float(q.min()) < 0.0:
        raise ValueError("energy functional needs a nonnegative potential")
    u = np.asarray(u, dtype=float)
    return discrete_h1_seminorm(u, dx) ** 2 + float(dx * np.sum(q * u * u))


@dataclass(frozen=True)
class EnergyReport:
    """Verdict of one certificate check.

    ``max_violation`` is the largest amount by which the certified bound
    was exceeded (0 when it held everywhere), ``bound_ratio_sup`` the
    largest observed/allowed ratio, and ``tolerance`` the slack the
    verdict used.
    """

    check_name: str
    verdict: bool
    max_violation: float
    bound_ratio_sup: float
    tolerance: float

    def as_dict(self) -> dict:
        return {
            "check_name": self.check_name,
            "verdict": self.verdict,
            "max_violation": self.max_violation,
            "bound_ratio_sup": self.bound_ratio_sup,
            "tolerance": self.tolerance,
        }


def check_energy_dissipation(series, tol_rel: float = 1e-10) -> EnergyReport:
    """Per-step monotone decay of the energy trace.

    The tolerance is relative to the initial energy. Requires a series
    solved in the energy-tracking regime.

    Raises
    ------
    ValueError
        If the series carries no energy trace.
    """
    if series.energy_trace is None:
        raise ValueError("series has no energy trace; run with sign +1 and q >= 0")
    e = np.asarray(series.energy_trace, dtype=float)
    tol = tol_rel * max(e[0], _TINY)
    diffs = np.diff(e)
    max_violation = float(max(0.0, diffs.max() if diffs.size else 0.0))
    ratio = float(np.max(e[1:] / np.maximum(e[:-1], _TINY))) if e.size > 1 else 0.0
    return EnergyReport(
        check_name="energy_dissipation",
        verdict=bool(max_violation <= tol),
        max_violation=max_violation,
        bound_ratio_sup=ratio,
        tolerance=tol,
    )


def check_l2_contraction(series, tol_rel: float = 1e-12) -> EnergyReport:
    """Per-step monotone decay of the L2 norm trace, relative tolerance."""
    n = np.asarray(series.norm_trace, dtype=float)
    rel = np.diff(n) / np.maximum(n[:-1], _TINY)
    max_violation = float(max(0.0, rel.max() if rel.size else 0.0))
    ratio = float(np.max(n[1:] / np.maximum(n[:-1], _TINY))) if n.size > 1 else 0.0
    return EnergyReport(
        check_name="l2_contraction",
        verdict=bool(max_violation <= tol_rel),
        max_violation=max_violation,
        bound_ratio_sup=ratio,
        tolerance=tol_rel,
    )


def check_gronwall_bound(series, q, tol_rel: float = 1e-6) -> EnergyReport:
    """Exponential growth bound norm(t_n) <= (1+tol) e^(t_n sup|q|) norm(0)."""
    n = np.asarray(series.norm_trace, dtype=float)
    t = series.dt * np.arange(n.size)
    bound = n[0] * np.exp(t * q.sup_norm)
    ratios = n / np.maximum(bound, _TINY)
    max_violation = float(max(0.0, np.max(n - (1.0 + tol_rel) * bound)))
    return EnergyReport(
        check_name="gronwall_bound",
        verdict=bool(np.all(n <= (1.0 + tol_rel) * bound)),
        max_violation=max_violation,
        bound_ratio_sup=float(ratios.max()),
        tolerance=tol_rel,
    )


def check_apriori_bound(series, q, u0: np.ndarray, dx: float,
                        bound_const: float = 10.0) -> EnergyReport:
    """Snapshot-time bound of (|u|_H1 + |u|_L2) against the data norms.

    The denominator scales with (1 + sup|q|)(|u0|_L2 + |u0|_H1); zero
    data gives ratio 0 by convention.
    """
    u0 = np.asarray(u0, dtype=float)
    data = discrete_l2(u0, dx) + discrete_h1_seminorm(u0, dx)
    denom = (1.0 + q.sup_norm) * data
    sup_ratio = 0.0
    if data > 0.0:
        for u in series.snapshots.values():
            val = (discrete_h1_seminorm(u, dx) + discrete_l2(u, dx)) / denom
            sup_ratio = max(sup_ratio, val)
    return EnergyReport(
        check_name="apriori_bound",
        verdict=bool(sup_ratio <= bound_const),
        max_violation=float(max(0.0, sup_ratio - bound_const)),
        bound_ratio_sup=float(sup_ratio),
        tolerance=bound_const,
    )

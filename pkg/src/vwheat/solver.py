"""Theta-weighted implicit finite differences for the 1-D heat equation
with a potential term, plus two independent reference oracles.

The scheme solves (I + dt*theta*A) u_new = (I - dt*(1-theta)*A) u with
A = -D2 + sign * diag(q) under homogeneous Dirichlet walls, one
tridiagonal elimination per step. The oracles (exact free evolution by
Gaussian convolution, and a Duhamel fixed-point iteration for bounded
potentials) share no code with the scheme.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .diagnostics import discrete_l2, energy_functional
from .errors import OutOfRegimeError, PlacementError, SingularSystemError
from .potentials import RegularizedPotential


@dataclass(frozen=True)
class SpaceTimeGrid:
    """Uniform interior grid on (a, b) with fixed time step.

    ``nx`` counts interior points; the walls at a and b carry the
    homogeneous Dirichlet condition and are not stored. Snapshot times
    are rounded to the nearest step and must land inside [0, t_final].
    """

    a: float
    b: float
    nx: int
    dt: float
    t_final: float
    snapshot_times: tuple[float, ...] = ()

    def __post_init__(self):
        if not self.b > self.a:
            raise ValueError("domain needs b > a")
        if self.nx < 1:
            raise ValueError("nx must be at least 1")
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise ValueError("dt must be positive")
        if not (self.t_final > 0 and math.isfinite(self.t_final)):
            raise ValueError("t_final must be positive")
        steps = round(self.t_final / self.dt)
        tol = 1e-8 * max(1.0, self.t_final)
        if steps < 1 or abs(steps * self.dt - self.t_final) > tol:
            raise ValueError("t_final must be a whole number of steps")
        for t in self.snapshot_times:
            n = round(t / self.dt)
            if n < 0 or n > steps or abs(n * self.dt - t) > 1e-8 * max(1.0, t):
                raise ValueError(
                    f"snapshot time {t} is not a step multiple inside the range"
                )

    @classmethod
    def from_spacing(
        cls,
        a: float,
        b: float,
        dx: float,
        dt: float,
        t_final: float,
        snapshot_times: tuple[float, ...] = (),
    ) -> "SpaceTimeGrid":
        """Build a grid from a target spacing that must divide b - a."""
        if dx <= 0:
            raise ValueError("dx must be positive")
        cells = (b - a) / dx
        if abs(cells - round(cells)) > 1e-8 * max(1.0, cells):
            raise ValueError(f"dx={dx} does not evenly divide the domain [{a}, {b}]")
        nx = int(round(cells)) - 1
        return cls(a=a, b=b, nx=nx, dt=dt, t_final=t_final,
                   snapshot_times=tuple(snapshot_times))

    @property
    def dx(self) -> float:
        return (self.b - self.a) / (self.nx + 1)

    @property
    def x_interior(self) -> np.ndarray:
        return self.a + self.dx * np.arange(1, self.nx + 1)

    @property
    def x_full(self) -> np.ndarray:
        return self.a + self.dx * np.arange(0, self.nx + 2)

    @property
    def step_count(self) -> int:
        return round(self.t_final / self.dt)


@dataclass(frozen=True)
class SchemeConfig:
    """Time-weighting of the scheme: 1 backward Euler, 0.5 trapezoidal."""

    theta: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.theta <= 1.0:
            raise ValueError("theta must lie in [0, 1]")


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    """Everything one run needs: grid, scheme, potential samples, data."""

    grid: SpaceTimeGrid
    scheme: SchemeConfig
    potential: RegularizedPotential
    u0: np.ndarray
    sign: int | None = None

    def __post_init__(self):
        sign = self.sign if self.sign is not None else self.potential.spec.sign
        if sign not in (-1, 1):
            raise ValueError("sign must be +1 or -1")
        if self.sign is not None and self.sign != self.potential.spec.sign:
            raise ValueError("explicit sign disagrees with the potential spec")
        object.__setattr__(self, "sign", sign)
        if self.u0.shape != (self.grid.nx,):
            raise ValueError("u0 length must match the interior grid")
        if self.potential.samples.shape != (self.grid.nx,):
            raise ValueError("potential samples must match the interior grid")


@dataclass(frozen=True, eq=False)
class SolutionSeries:
    """Snapshots and per-step traces of one run.

    ``snapshots`` maps each requested time to the field at the nearest
    step; ``energy_trace`` is present only for sign +1 runs with a
    nonnegative potential, where the energy identity holds.
    """

    snapshots: dict
    norm_trace: np.ndarray
    energy_trace: np.ndarray | None
    step_count: int
    dt: float
    flags: tuple[str, ...] = ()


def sample_initial_bump(center: float, grid: SpaceTimeGrid) -> np.ndarray:
    """Unit-width bump exp(1/((x-center)^2 - 1/4)) sampled on the grid.

    Raises
    ------
    PlacementError
        If the support [center - 1/2, center + 1/2] touches a wall.
    """
    if not (grid.a < center - 0.5 and center + 0.5 < grid.b):
        raise PlacementError(
            f"initial bump at {center} does not fit inside ({grid.a}, {grid.b})"
        )
    x = grid.x_interior
    out = np.zeros_like(x)
    inner = np.abs(x - center) < 0.5
    out[inner] = np.exp(1.0 / ((x[inner] - center) ** 2 - 0.25))
    return out


def thomas_solve(
    sub: np.ndarray, diag: np.ndarray, sup: np.ndarray, rhs: np.ndarray
) -> np.ndarray:
    """Solve a tridiagonal system by forward elimination and back substitution.

    Parameters
    ----------
    sub, diag, sup : array_like
        Bands of the matrix; ``sub`` and ``sup`` have one entry less than
        ``diag``.
    rhs : array_like
        Right-hand side, same length as ``diag``.

    Raises
    ------
    SingularSystemError
        On a vanishing pivot, with its index attached.
    """
    n = len(diag)
    if len(rhs) != n or len(sub) != n - 1 or len(sup) != n - 1:
        raise ValueError("band lengths are inconsistent")
    d = list(diag)
    r = list(rhs)
    s_lo = list(sub)
    s_up = list(sup)
    cp = [0.0] * n
    piv = d[0]
    if piv == 0.0:
        raise SingularSystemError("zero pivot in elimination", pivot_index=0)
    if n > 1:
        cp[0] = s_up[0] / piv
    dp = [r[0] / piv] + [0.0] * (n - 1)
    for i in range(1, n):
        piv = d[i] - s_lo[i - 1] * cp[i - 1]
        if piv == 0.0:
            raise SingularSystemError("zero pivot in elimination", pivot_index=i)
        if i < n - 1:
            cp[i] = s_up[i] / piv
        dp[i] = (r[i] - s_lo[i - 1] * dp[i - 1]) / piv
    x = [0.0] * n
    x[-1] = dp[-1]
    for i in range(n - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return np.asarray(x)


def step(u: np.ndarray, problem: ProblemSpec) -> np.ndarray:
    """Advance one time step with the theta-weighted scheme."""
    g = problem.grid
    theta = problem.scheme.theta
    q = problem.potential.samples
    sg = problem.sign
    r = g.dt / g.dx ** 2
    if theta < 1.0:
        lap = np.empty_like(u)
        lap[1:-1] = u[:-2] - 2.0 * u[1:-1] + u[2:]
        if u.size == 1:
            lap[0] = -2.0 * u[0]
        else:
            lap[0] = -2.0 * u[0] + u[1]
            lap[-1] = u[-2] - 2.0 * u[-1]
        rhs = u + (1.0 - theta) * (r * lap - g.dt * sg * q * u)
    else:
        rhs = u
    off = np.full(u.size - 1, -theta * r)
    diag = 1.0 + theta * (2.0 * r + g.dt * sg * q)
    return thomas_solve(off, diag, off, rhs)


def solve(problem: ProblemSpec) -> SolutionSeries:
    """Run the scheme from t=0 to t_final, collecting traces and snapshots.

    The L2 norm is recorded every step. The energy functional is recorded
    only when sign is +1 and the potential samples are nonnegative, the
    regime where the discrete dissipation identity applies. Growth runs
    whose explicit part would break diagonal dominance (dt times the sup
    norm above 1) are completed but flagged.
    """
    g = problem.grid
    flags: list[str] = []
    q = problem.potential.samples
    if problem.sign == -1 and g.dt * problem.potential.sup_norm > 1.0:
        flags.append("diagonal_dominance_lost")
    track_energy = problem.sign == 1 and bool(np.all(q >= 0.0))
    steps = g.step_count
    snap_steps: dict[int, list[float]] = {}
    for t in g.snapshot_times:
        snap_steps.setdefault(round(t / g.dt), []).append(t)
    u = np.asarray(problem.u0, dtype=float).copy()
    snapshots: dict[float, np.ndarray] = {}
    for t in snap_steps.get(0, []):
        snapshots[t] = u.copy()
    norms = [discrete_l2(u, g.dx)]
    energies = [energy_functional(u, q, g.dx)] if track_energy else None
    for n in range(1, steps + 1):
        try:
            u = step(u, problem)
        except SingularSystemError as exc:
            raise SingularSystemError(
                f"step {n}: {exc}", pivot_index=exc.pivot_index
            ) from exc
        norms.append(discrete_l2(u, g.dx))
        if track_energy:
            energies.append(energy_functional(u, q, g.dx))
        for t in snap_steps.get(n, []):
            snapshots[t] = u.copy()
    return SolutionSeries(
        snapshots=snapshots,
        norm_trace=np.asarray(norms),
        energy_trace=np.asarray(energies) if track_energy else None,
        step_count=steps,
        dt=g.dt,
        flags=tuple(flags),
    )


def heat_kernel_exact(u0: np.ndarray, t: float, grid: SpaceTimeGrid) -> np.ndarray:
    """Free-space heat evolution by discrete Gaussian convolution.

    The sampled Gaussian is renormalized to unit discrete mass, which
    keeps the operator exact on constants and makes the small-time limit
    reduce to the identity even when the kernel width falls below dx.
    Walls are ignored: this is a reference for interior comparisons on
    data far from the boundary.

    Raises
    ------
    ValueError
        If t is not positive.
    """
    if not t > 0:
        raise ValueError("heat kernel time must be positive")
    dx = grid.dx
    # exp underflows past x^2/(4t) ~ 745; clip the stencil there
    reach = math.sqrt(745.0 * 4.0 * t)
    m = int(math.ceil(reach / dx)) + 2
    xs = np.arange(-m, m + 1) * dx
    g = np.exp(-xs ** 2 / (4.0 * t)) / math.sqrt(4.0 * math.pi * t)
    g /= dx * g.sum()
    full = np.convolve(np.asarray(u0, dtype=float), g)
    return dx * full[m:m + u0.size]


@dataclass(frozen=True, eq=False)
class PicardResult:
    """Fixed-point oracle output: final field and the last increment size."""

    u: np.ndarray
    increment_norm: float
    iterations: int


def duhamel_picard_oracle(
    problem: ProblemSpec, iterations: int = 8, quad_nodes: int = 12
) -> PicardResult:
    """Picard iteration on the Duhamel form, independent of the scheme.

    Iterates u <- free(u0) - sign * int_0^t heat(t-s)[q u(s)] ds with
    trapezoid quadrature on a uniform node set in s. Contraction needs
    t_final * sup|q| < 1.

    Raises
    ------
    OutOfRegimeError
        Outside the contraction regime.
    """
    g = problem.grid
    q = problem.potential.samples
    T = g.t_final
    if T * problem.potential.sup_norm >= 1.0:
        raise OutOfRegimeError(
            f"t_final * sup|q| = {T * problem.potential.sup_norm:.3g} is not below 1"
        )
    if quad_nodes < 2:
        raise ValueError("need at least 2 quadrature intervals")
    s_nodes = np.linspace(0.0, T, quad_nodes + 1)
    ds = s_nodes[1] - s_nodes[0]

    def free(v: np.ndarray, t: float) -> np.ndarray:
        if t <= 0.0:
            return v.copy()
        return heat_kernel_exact(v, t, grid=g)

    u0 = np.asarray(problem.u0, dtype=float)
    base = [free(u0, s) for s in s_nodes]
    current = [b.copy() for b in base]
    inc = math.inf
    done = 0
    for _ in range(iterations):
        new = [base[0].copy()]
        for i in range(1, quad_nodes + 1):
            weights = np.full(i + 1, ds)
            weights[0] *= 0.5
            weights[-1] *= 0.5
            acc = np.zeros_like(u0)
            for j in range(i + 1):
                acc += weights[j] * free(q * current[j], s_nodes[i] - s_nodes[j])
            new.append(base[i] - problem.sign * acc)
        inc = max(discrete_l2(a - b, g.dx) for a, b in zip(new, current))
        current = new
        done += 1
        if inc == 0.0:
            break
    return PicardResult(u=current[-1], increment_norm=inc, iterations=done)

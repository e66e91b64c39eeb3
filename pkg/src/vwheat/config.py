"""Flat key = value run configuration: parsing, validation, serialization.

The format is line oriented: one dotted key per line, ``#`` comments,
no sections. Unknown keys are rejected with their line number so config
drift fails loudly. ``serialize_config`` emits every key in a fixed
order with round-trip exact number rendering.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import ConfigError, PlacementError
from .potentials import POTENTIAL_KINDS, SCHEDULE_KINDS, OmegaSchedule, omega_of_eps
from .solver import SpaceTimeGrid


@dataclass(frozen=True)
class RunConfig:
    """Validated scalar view of one run or sweep configuration."""

    a: float = 0.0
    b: float = 100.0
    dx: float = 0.01
    dt: float = 0.2
    t_final: float = 10.0
    snapshots: tuple[float, ...] = (2.0, 6.0, 10.0)
    theta: float = 1.0
    kind: str = "dirac"
    x0: float = 40.0
    strength: float = 1.0
    sign: int = 1
    moments: int = 0
    schedule: str | None = None
    n0: int = 1
    epsilon: float | tuple[float, ...] = 0.2
    u0_center: float = 50.0
    output_dir: str = "out"

    @property
    def resolved_schedule(self) -> str:
        if self.schedule is not None:
            return self.schedule
        return "linear" if self.sign == 1 else "logarithmic"


def _parse_float(token: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise ConfigError(f"expected a number, got {token!r}") from None


def _parse_int(token: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ConfigError(f"expected an integer, got {token!r}") from None


def _parse_list(token: str) -> tuple[float, ...]:
    inner = token.strip()
    if not (inner.startswith("[") and inner.endswith("]")):
        raise ConfigError(f"expected a [..] list, got {token!r}")
    items = [s.strip() for s in inner[1:-1].split(",") if s.strip()]
    if not items:
        raise ConfigError("empty list")
    return tuple(_parse_float(s) for s in items)


def _parse_epsilon(token: str):
    if token.strip().startswith("["):
        return _parse_list(token)
    return _parse_float(token)


def _parse_schedule(token: str) -> str:
    name = token.strip().lower()
    if name not in SCHEDULE_KINDS:
        raise ConfigError(f"schedule must be one of {SCHEDULE_KINDS}, got {token!r}")
    return name


def _parse_kind(token: str) -> str:
    name = token.strip().lower()
    if name not in POTENTIAL_KINDS:
        raise ConfigError(f"potential kind must be one of {POTENTIAL_KINDS}, got {token!r}")
    return name


def _parse_string(token: str) -> str:
    token = token.strip()
    if len(token) >= 2 and token[0] == token[-1] and token[0] in "'\"":
        token = token[1:-1]
    if not token:
        raise ConfigError("empty value")
    return token


# dotted key -> (attribute, parser); order fixes serialization layout
_KEYS = {
    "domain.a": ("a", _parse_float),
    "domain.b": ("b", _parse_float),
    "grid.dx": ("dx", _parse_float),
    "time.dt": ("dt", _parse_float),
    "time.T": ("t_final", _parse_float),
    "time.snapshots": ("snapshots", _parse_list),
    "scheme.theta": ("theta", _parse_float),
    "potential.kind": ("kind", _parse_kind),
    "potential.x0": ("x0", _parse_float),
    "potential.strength": ("strength", _parse_float),
    "potential.sign": ("sign", _parse_int),
    "mollifier.moments": ("moments", _parse_int),
    "omega.schedule": ("schedule", _parse_schedule),
    "omega.N0": ("n0", _parse_int),
    "epsilon": ("epsilon", _parse_epsilon),
    "u0.center": ("u0_center", _parse_float),
    "output.dir": ("output_dir", _parse_string),
}


def parse_config(text: str) -> RunConfig:
    """Parse and validate a configuration document.

    An empty document yields the demonstration defaults. Raises
    ConfigError with the offending line number for structural problems;
    placement and range violations surface as their module error types.
    """
    values: dict = {}
    seen: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, token = line.partition("=")
        key = key.strip()
        token = token.strip()
        if key not in _KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in seen:
            raise ConfigError(
                f"line {lineno}: duplicate key {key!r} (first on line {seen[key]})"
            )
        seen[key] = lineno
        attr, parser = _KEYS[key]
        try:
            values[attr] = parser(token)
        except ConfigError as exc:
            raise ConfigError(f"line {lineno}: {key}: {exc}") from None
    cfg = RunConfig(**values)
    validate_config(cfg)
    return cfg


def validate_config(cfg: RunConfig) -> None:
    """Check every field against the module preconditions it will meet."""
    if not cfg.b > cfg.a:
        raise ConfigError("domain.b must exceed domain.a")
    if not 0.0 <= cfg.theta <= 1.0:
        raise ConfigError(f"scheme.theta must lie in [0, 1], got {cfg.theta}")
    if cfg.sign not in (-1, 1):
        raise ConfigError("potential.sign must be +1 or -1")
    if cfg.strength < 0:
        raise ConfigError("potential.strength must be nonnegative")
    if not 0 <= cfg.moments <= 6:
        raise ConfigError("mollifier.moments must lie in [0, 6]")
    if cfg.n0 < 1:
        raise ConfigError("omega.N0 must be a positive integer")
    if cfg.kind == "bounded":
        raise ConfigError(
            "bounded potentials carry a sample profile and are only "
            "reachable through the library interface"
        )
    # grid construction enforces spacing, step and snapshot consistency
    try:
        SpaceTimeGrid.from_spacing(
            cfg.a, cfg.b, cfg.dx, cfg.dt, cfg.t_final, cfg.snapshots
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if cfg.kind in ("dirac", "dirac_squared") and not cfg.a < cfg.x0 < cfg.b:
        raise PlacementError(
            f"potential.x0 = {cfg.x0} outside the open domain ({cfg.a}, {cfg.b})"
        )
    if not (cfg.a < cfg.u0_center - 0.5 and cfg.u0_center + 0.5 < cfg.b):
        raise PlacementError(
            f"u0.center = {cfg.u0_center}: the unit-width bump does not fit "
            f"inside ({cfg.a}, {cfg.b})"
        )
    schedule = OmegaSchedule(cfg.resolved_schedule, cfg.n0)
    eps_list = cfg.epsilon if isinstance(cfg.epsilon, tuple) else (cfg.epsilon,)
    for e in eps_list:
        omega_of_eps(schedule, e)  # raises InvalidEpsilonError when out of range


def _render(value) -> str:
    if isinstance(value, tuple):
        return "[" + ", ".join(repr(float(v)) for v in value) + "]"
    if isinstance(value, bool):
        raise TypeError("no boolean keys")
    if isinstance(value, float):
        return repr(value)
    return str(value)


def serialize_config(cfg: RunConfig) -> str:
    """Render a configuration document that parses back to ``cfg``."""
    out = []
    for key, (attr, _) in _KEYS.items():
        value = getattr(cfg, attr)
        if attr == "schedule":
            value = cfg.resolved_schedule
        out.append(f"{key} = {_render(value)}")
    return "\n".join(out) + "\n"


def with_resolved_schedule(cfg: RunConfig) -> RunConfig:
    """Fill in the sign-dependent default schedule explicitly."""
    if cfg.schedule is not None:
        return cfg
    return replace(cfg, schedule=cfg.resolved_schedule)


__all__ = [
    "RunConfig",
    "parse_config",
    "serialize_config",
    "validate_config",
    "with_resolved_schedule",
]

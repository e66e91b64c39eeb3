"""Command line entry points: run, sweep, check, figures.

Artifacts land under the output directory (flag --out, then the
VWH_OUTPUT_DIR environment variable, then output.dir from the config).
Exit status is 0 only when every verdict passed; validation and runtime
failures exit 1; usage errors exit 2.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import artifacts, kernels
from .config import RunConfig, parse_config, serialize_config, with_resolved_schedule
from .diagnostics import discrete_l2
from .errors import ConfigError
from .experiments import (
    FIGURE_NAMES,
    MollifierOrderConfig,
    NetConfig,
    UniquenessConfig,
    _standard_checks,
    cooling_metric,
    figure_experiments,
    mollifier_order_experiment,
    reference_grid,
    run_epsilon_net,
    uniqueness_experiment,
)
from .potentials import (
    OmegaSchedule,
    PotentialSpec,
    fit_moderateness_exponent,
    regularize,
)
from .solver import (
    ProblemSpec,
    SchemeConfig,
    SpaceTimeGrid,
    heat_kernel_exact,
    sample_initial_bump,
    solve,
    thomas_solve,
)


def _load_config(path: str | None) -> RunConfig:
    if path is None:
        return with_resolved_schedule(RunConfig())
    with open(path) as fh:
        return with_resolved_schedule(parse_config(fh.read()))


def _resolve_outdir(flag: str | None, cfg: RunConfig) -> str:
    if flag:
        return flag
    env = os.environ.get("VWH_OUTPUT_DIR")
    if env:
        return env
    return cfg.output_dir


def _build_kernel(cfg: RunConfig) -> kernels.MollifierKernel:
    base = kernels.make_standard_bump()
    if cfg.moments >= 1:
        return kernels.vanish_moments(base, cfg.moments)
    return base


def _grid_from(cfg: RunConfig) -> SpaceTimeGrid:
    return SpaceTimeGrid.from_spacing(
        cfg.a, cfg.b, cfg.dx, cfg.dt, cfg.t_final, cfg.snapshots
    )


def _spec_from(cfg: RunConfig) -> PotentialSpec:
    if cfg.kind == "zero":
        return PotentialSpec(kind="zero", sign=cfg.sign)
    return PotentialSpec(
        kind=cfg.kind, x0=cfg.x0, strength=cfg.strength, sign=cfg.sign
    )


def _print_checks(checks) -> bool:
    ok = True
    for report in checks:
        state = "PASS" if report.verdict else "FAIL"
        print(f"  {report.check_name:<24} {state}  max_violation={report.max_violation:.3e}")
        ok &= report.verdict
    return ok


def cmd_run(cfg: RunConfig, outdir: str) -> int:
    if isinstance(cfg.epsilon, tuple):
        raise ConfigError("run expects a scalar epsilon; use sweep for a list")
    kernel = _build_kernel(cfg)
    schedule = OmegaSchedule(cfg.resolved_schedule, cfg.n0)
    grid = _grid_from(cfg)
    spec = _spec_from(cfg)
    pot = regularize(spec, kernel, schedule, cfg.epsilon, grid)
    u0 = sample_initial_bump(cfg.u0_center, grid)
    series = solve(ProblemSpec(grid, SchemeConfig(cfg.theta), pot, u0))
    checks = _standard_checks(series, pot, u0, grid.dx)
    base = os.path.join(outdir, "run")
    artifacts.write_snapshot_csv(os.path.join(base, "u0.csv"), grid, u0)
    written = ["u0.csv"]
    for t in grid.snapshot_times:
        name = artifacts.snapshot_filename(t, cfg.epsilon)
        artifacts.write_snapshot_csv(
            os.path.join(base, name), grid, series.snapshots[t]
        )
        written.append(name)
    written.sort()
    payload = {
        "name": "run",
        "config": serialize_config(cfg),
        "checks": [c.as_dict() for c in checks],
        "artifacts": written,
        "flags": list(series.flags),
        "final_norm": float(series.norm_trace[-1]),
    }
    artifacts.write_json(os.path.join(base, "report.json"), payload)
    artifacts.write_manifest(base)
    print(f"run: {series.step_count} steps, final norm {series.norm_trace[-1]:.6e}")
    if series.flags:
        print(f"  flags: {', '.join(series.flags)}")
    ok = _print_checks(checks)
    return 0 if ok else 1


def cmd_sweep(cfg: RunConfig, outdir: str) -> int:
    if not isinstance(cfg.epsilon, tuple):
        raise ConfigError("sweep expects an epsilon list such as [0.8, 0.4, 0.2]")
    eps = tuple(sorted(cfg.epsilon, reverse=True))
    net_cfg = NetConfig(
        epsilons=eps,
        schedule=OmegaSchedule(cfg.resolved_schedule, cfg.n0),
        kernel=_build_kernel(cfg),
        potential_spec=_spec_from(cfg),
        grid=_grid_from(cfg),
        scheme=SchemeConfig(cfg.theta),
        u0_center=cfg.u0_center,
    )
    net, report = run_epsilon_net(net_cfg)
    base = os.path.join(outdir, "sweep")
    written = []
    for e in eps:
        series = net.runs[e]
        for t in net.grid.snapshot_times:
            name = artifacts.snapshot_filename(t, e)
            artifacts.write_snapshot_csv(
                os.path.join(base, name), net.grid, series.snapshots[t]
            )
            written.append(name)
    written.sort()
    report.artifacts.extend(written)
    payload = report.as_dict()
    payload["config_text"] = serialize_config(cfg)
    artifacts.write_json(os.path.join(base, "report.json"), payload)
    artifacts.write_manifest(base)
    for name, value in report.fitted_exponents.items():
        print(f"sweep: {name} exponent {value:+.4f}")
    ok = _print_checks(report.checks)
    return 0 if ok else 1


def cmd_figures(which: str, outdir: str) -> int:
    base = os.path.join(outdir, which)
    report = figure_experiments(which, output_dir=base)
    artifacts.write_manifest(base)
    ok = _print_checks(report.checks)
    for entry in report.details.get("metrics", []):
        state = "PASS" if entry["verdict"] else "FAIL"
        tag = f"{entry['kind']} at x={entry['x']:g} t={entry['t']:g}"
        if "epsilon" in entry:
            tag += f" eps={entry['epsilon']:g}"
        if not entry["evaluable"]:
            state = "SKIP"
        print(f"  {tag:<24} {state}")
        ok &= entry["verdict"]
    print(f"figures: wrote {len(report.artifacts)} CSVs under {base}")
    return 0 if ok else 1


def _check_rows() -> list[tuple[str, bool, str]]:
    """The condensed verification battery behind the check subcommand."""
    rows: list[tuple[str, bool, str]] = []
    bump = kernels.make_standard_bump()

    c = bump.normalization_constant
    rows.append(("kernel normalization constant", abs(c - 2.2523) <= 1e-3,
                 f"c={c:.6f}"))
    mass = kernels.moment(bump, 0)
    m2 = kernels.moment(bump, 2)
    rows.append(("kernel mass and second moment",
                 abs(mass - 1.0) <= 1e-10 and abs(m2 - 0.158113636263798) <= 1e-9,
                 f"mass-1={mass - 1.0:.2e} m2={m2:.12f}"))
    combo = kernels.vanish_moments(bump, 3)
    resid = max(abs(kernels.moment(combo, j)) for j in (1, 2, 3))
    rows.append(("moment-vanishing combination (n=3)", resid <= 1e-6,
                 f"max residual {resid:.2e}"))

    rng = np.random.default_rng(20260819)
    n = 160
    sub = rng.uniform(-1.0, 1.0, n - 1)
    sup = rng.uniform(-1.0, 1.0, n - 1)
    diag = 3.0 + rng.uniform(0.0, 1.0, n)
    rhs = rng.uniform(-1.0, 1.0, n)
    x = thomas_solve(sub, diag, sup, rhs)
    dense = np.diag(diag) + np.diag(sub, -1) + np.diag(sup, 1)
    err = float(np.max(np.abs(x - np.linalg.solve(dense, rhs))))
    rows.append(("tridiagonal solver vs dense oracle", err <= 1e-10, f"{err:.2e}"))

    grid = SpaceTimeGrid.from_spacing(0.0, 100.0, 0.01, 0.01, 2.0, (2.0,))
    u0 = sample_initial_bump(50.0, grid)
    free_spec = PotentialSpec(kind="zero", sign=1)
    free_pot = regularize(free_spec, bump, OmegaSchedule("linear"), 0.2, grid)
    series = solve(ProblemSpec(grid, SchemeConfig(1.0), free_pot, u0))
    exact = heat_kernel_exact(u0, 2.0, grid)
    rel = float(np.max(np.abs(series.snapshots[2.0] - exact)) / np.max(np.abs(exact)))
    rows.append(("free-heat oracle match (2%)", rel <= 0.02, f"rel Linf {rel:.4%}"))

    errs = {}
    og = SpaceTimeGrid.from_spacing(35.0, 65.0, 0.01, 0.04, 1.0, (1.0,))
    xg = og.x_interior
    gauss = np.exp(-((xg - 50.0) ** 2) / 2.0)
    ref = heat_kernel_exact(gauss, 1.0, og)
    for dt in (0.04, 0.02, 0.01, 0.005):
        g2 = SpaceTimeGrid.from_spacing(35.0, 65.0, 0.01, dt, 1.0, (1.0,))
        pot2 = regularize(free_spec, bump, OmegaSchedule("linear"), 0.2, g2)
        s2 = solve(ProblemSpec(g2, SchemeConfig(1.0), pot2, gauss))
        errs[dt] = discrete_l2(s2.snapshots[1.0] - ref, g2.dx)
    slope = float(np.polyfit(np.log(list(errs)), np.log(list(errs.values())), 1)[0])
    rows.append(("temporal order, implicit scheme", 0.8 <= slope <= 1.2,
                 f"order {slope:.3f}"))

    ref_grid = reference_grid()
    dirac = PotentialSpec(kind="dirac", x0=40.0, sign=1)
    pot = regularize(dirac, bump, OmegaSchedule("linear"), 0.2, ref_grid)
    u0r = sample_initial_bump(50.0, ref_grid)
    run = solve(ProblemSpec(ref_grid, SchemeConfig(1.0), pot, u0r))
    checks = _standard_checks(run, pot, u0r, ref_grid.dx)
    rows.append(("dissipation and contraction", all(c.verdict for c in checks),
                 ", ".join(c.check_name for c in checks)))

    heat_spec = PotentialSpec(kind="dirac", x0=30.0, sign=-1)
    hpot = regularize(heat_spec, bump, OmegaSchedule("linear"), 0.2, ref_grid)
    hrun = solve(ProblemSpec(ref_grid, SchemeConfig(1.0), hpot, u0r))
    hchecks = _standard_checks(hrun, hpot, u0r, ref_grid.dx)
    rows.append(("growth-sign exponential bound", all(c.verdict for c in hchecks),
                 f"bound ratio {hchecks[0].bound_ratio_sup:.6f}"))

    sched = OmegaSchedule("linear")
    net1 = [regularize(dirac, bump, sched, e, ref_grid)
            for e in (0.8, 0.4, 0.2, 0.1, 0.05)]
    fit1 = fit_moderateness_exponent(net1)
    sq = PotentialSpec(kind="dirac_squared", x0=40.0, sign=1)
    net2 = [regularize(sq, bump, sched, e, ref_grid)
            for e in (0.8, 0.4, 0.2, 0.1, 0.05)]
    fit2 = fit_moderateness_exponent(net2)
    rows.append(("moderateness exponents (1, 2)",
                 abs(fit1.exponent - 1.0) <= 0.05 and abs(fit2.exponent - 2.0) <= 0.05,
                 f"{fit1.exponent:.4f}, {fit2.exponent:.4f}"))

    smooth = lambda y: np.sin(np.asarray(y) / 5.0) + 2.0  # noqa: E731
    rep2 = mollifier_order_experiment(MollifierOrderConfig(
        q_callable=smooth, kernel=bump, omegas=(0.8, 0.4, 0.2, 0.1)))
    combo3 = kernels.vanish_moments(bump, 3)
    rep4 = mollifier_order_experiment(MollifierOrderConfig(
        q_callable=smooth, kernel=combo3, omegas=(1.0, 0.8, 0.6, 0.5, 0.4)))
    o2 = rep2.fitted_exponents["order"]
    o4 = rep4.fitted_exponents["order"]
    rows.append(("mollification orders (2, 4)",
                 abs(o2 - 2.0) <= 0.3 and abs(o4 - 4.0) <= 0.4,
                 f"{o2:.3f}, {o4:.3f}"))

    fig1 = figure_experiments("fig1")
    fig3 = figure_experiments("fig3")
    ordered = all(m["verdict"] for m in fig1.details["metrics"])
    heated = all(m["verdict"] for m in fig3.details["metrics"])
    rows.append(("cooling ordering and heating ratio", ordered and heated,
                 f"fig1 {ordered}, fig3 {heated}"))

    uniq = uniqueness_experiment(UniquenessConfig(
        epsilons=(0.5, 0.25),
        schedule=sched,
        kernel=bump,
        potential_spec=dirac,
        grid=ref_grid,
    ))
    d = uniq.decay_table
    ratio = d[0.25] / d[0.5]
    bound = math.exp(-2.0) * 10.0
    rows.append(("perturbation decay (dyadic ratio)", ratio <= bound,
                 f"{ratio:.4f} <= {bound:.4f}"))
    return rows


def cmd_check() -> int:
    rows = _check_rows()
    width = max(len(name) for name, _, _ in rows) + 2
    ok = True
    for name, passed, detail in rows:
        state = "PASS" if passed else "FAIL"
        print(f"{name:<{width}} {state}  {detail}")
        ok &= passed
    print(f"\n{'all checks passed' if ok else 'FAILURES present'}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vwheat",
        description="Implicit heat solver with mollified singular potentials",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("run", "single solve with diagnostics and CSV snapshots"),
        ("sweep", "epsilon-net sweep with moderateness fits"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", help="path to a key = value config file")
        p.add_argument("--out", help="output directory override")
    p = sub.add_parser("check", help="run the condensed verification battery")
    p.add_argument("--config", help=argparse.SUPPRESS)
    p = sub.add_parser("figures", help="reproduce a demonstration figure set")
    p.add_argument("which", choices=FIGURE_NAMES)
    p.add_argument("--out", help="output directory override")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "check":
            return cmd_check()
        if args.command == "figures":
            outdir = _resolve_outdir(args.out, RunConfig())
            return cmd_figures(args.which, outdir)
        cfg = _load_config(args.config)
        outdir = _resolve_outdir(args.out, cfg)
        if args.command == "run":
            return cmd_run(cfg, outdir)
        return cmd_sweep(cfg, outdir)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

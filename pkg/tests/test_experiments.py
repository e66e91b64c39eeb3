import numpy as np
import pytest

from vwheat import (
    ConsistencyConfig,
    DegenerateFitError,
    InapplicableExperimentError,
    InsufficientDataError,
    MollifierOrderConfig,
    NetConfig,
    OmegaSchedule,
    PotentialSpec,
    SpaceTimeGrid,
    UniquenessConfig,
    consistency_experiment,
    convergence_order,
    cooling_metric,
    figure_experiments,
    mollifier_order_experiment,
    run_epsilon_net,
    uniqueness_experiment,
    vanish_moments,
)


def coarse_grid(snaps=(2.0,)):
    return SpaceTimeGrid.from_spacing(0.0, 100.0, 0.05, 0.2, 2.0, snaps)


def test_convergence_order_exact_geometric():
    fit = convergence_order({0.4: 1.6e-2, 0.2: 4e-3, 0.1: 1e-3})
    assert fit.order == pytest.approx(2.0, abs=1e-6)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)


def test_convergence_order_rejects_short_input():
    with pytest.raises(InsufficientDataError):
        convergence_order({0.4: 1e-2, 0.2: 2.5e-3})


def test_convergence_order_rejects_nonpositive():
    with pytest.raises(DegenerateFitError):
        convergence_order({0.4: 1e-2, 0.2: 0.0, 0.1: 1e-3})


def test_net_requires_three_decreasing_epsilons(bump):
    cfg = NetConfig(
        epsilons=(0.4, 0.2),
        schedule=OmegaSchedule("linear"),
        kernel=bump,
        potential_spec=PotentialSpec(kind="dirac", x0=40.0),
        grid=coarse_grid(),
    )
    with pytest.raises(ValueError):
        run_epsilon_net(cfg)
    cfg2 = NetConfig(
        epsilons=(0.2, 0.4, 0.1),
        schedule=OmegaSchedule("linear"),
        kernel=bump,
        potential_spec=PotentialSpec(kind="dirac", x0=40.0),
        grid=coarse_grid(),
    )
    with pytest.raises(ValueError):
        run_epsilon_net(cfg2)


def test_epsilon_net_dirac_exponents(bump):
    cfg = NetConfig(
        epsilons=(0.8, 0.4, 0.2, 0.1),
        schedule=OmegaSchedule("linear"),
        kernel=bump,
        potential_spec=PotentialSpec(kind="dirac", x0=40.0),
        grid=coarse_grid(),
    )
    net, report = run_epsilon_net(cfg)
    assert set(net.runs) == {0.8, 0.4, 0.2, 0.1}
    assert report.fitted_exponents["potential"] == pytest.approx(1.0, abs=0.05)
    # the solution norms stay bounded along the net
    assert abs(report.fitted_exponents["solution"]) <= 0.05
    assert all(c.verdict for c in report.checks)
    assert list(report.decay_table) == [0.8, 0.4, 0.2, 0.1]


def test_uniqueness_zero_amplitude_is_exact_match(bump):
    cfg = UniquenessConfig(
        epsilons=(0.5, 0.25),
        schedule=OmegaSchedule("linear"),
        kernel=bump,
        potential_spec=PotentialSpec(kind="dirac", x0=40.0),
        grid=coarse_grid(),
        amplitude_scale=0.0,
    )
    report = uniqueness_experiment(cfg)
    assert all(v == 0.0 for v in report.decay_table.values())


def test_uniqueness_linear_response(bump):
    base = UniquenessConfig(
        epsilons=(0.5, 0.25),
        schedule=OmegaSchedule("linear"),
        kernel=bump,
        potential_spec=PotentialSpec(kind="dirac", x0=40.0),
        grid=coarse_grid(),
        amplitude_scale=1.0,
    )
    half = UniquenessConfig(
        epsilons=(0.5, 0.25),
        schedule=OmegaSchedule("linear"),
        kernel=bump,
        potential_spec=PotentialSpec(kind="dirac", x0=40.0),
        grid=coarse_grid(),
        amplitude_scale=0.5,
    )
    ra = uniqueness_experiment(base)
    rb = uniqueness_experiment(half)
    for e in (0.5, 0.25):
        assert rb.decay_table[e] == pytest.approx(
            0.5 * ra.decay_table[e], rel=1e-6
        )


def test_uniqueness_decay_tracks_exponential(bump):
    cfg = UniquenessConfig(
        epsilons=(0.5, 0.25, 0.125),
        schedule=OmegaSchedule("linear"),
        kernel=bump,
        potential_spec=PotentialSpec(kind="dirac", x0=40.0),
        grid=coarse_grid(),
    )
    report = uniqueness_experiment(cfg)
    d = report.decay_table
    # each halving of eps squares the e^{-1/eps} factor
    assert d[0.25] / d[0.5] == pytest.approx(np.exp(-2.0), rel=1e-2)
    assert d[0.125] / d[0.25] == pytest.approx(np.exp(-4.0), rel=1e-2)
    assert np.isfinite(report.fitted_exponents["envelope_constant"])
    orders = report.details["local_orders"]
    assert orders == sorted(orders)


def test_consistency_smooth_profile_second_order(bump):
    # grid fine enough that the sampling floor sits below the omega^2
    # truncation signal across the whole net
    grid = SpaceTimeGrid.from_spacing(30.0, 70.0, 0.005, 0.2, 2.0, (2.0,))
    x = grid.x_interior
    prof = np.exp(-((x - 50.0) ** 2))
    cfg = ConsistencyConfig(
        epsilons=(0.4, 0.2, 0.1),
        schedule=OmegaSchedule("linear"),
        kernel=bump,
        potential_spec=PotentialSpec(kind="bounded", profile=prof),
        grid=grid,
    )
    report = consistency_experiment(cfg)
    assert not report.details["exact_reproduction"]
    assert report.details["strictly_decreasing"]
    assert report.fitted_exponents["order"] == pytest.approx(2.0, abs=0.2)


def test_consistency_zero_kind_allowed(bump):
    cfg = ConsistencyConfig(
        epsilons=(0.4, 0.2, 0.1),
        schedule=OmegaSchedule("linear"),
        kernel=bump,
        potential_spec=PotentialSpec(kind="zero"),
        grid=coarse_grid(),
    )
    report = consistency_experiment(cfg)
    assert report.details["exact_reproduction"]


def test_consistency_rejects_singular_kinds(bump):
    cfg = ConsistencyConfig(
        epsilons=(0.4, 0.2, 0.1),
        schedule=OmegaSchedule("linear"),
        kernel=bump,
        potential_spec=PotentialSpec(kind="dirac", x0=40.0),
        grid=coarse_grid(),
    )
    with pytest.raises(InapplicableExperimentError):
        consistency_experiment(cfg)


def test_mollifier_order_standard_bump(bump):
    cfg = MollifierOrderConfig(
        q_callable=lambda x: np.sin(np.asarray(x) / 5.0) + 2.0,
        kernel=bump,
        omegas=(0.8, 0.4, 0.2, 0.1),
    )
    report = mollifier_order_experiment(cfg)
    assert report.fitted_exponents["order"] == pytest.approx(2.0, abs=0.1)


def test_mollifier_order_vanishing_combination(bump):
    combo = vanish_moments(bump, 3)
    cfg = MollifierOrderConfig(
        q_callable=lambda x: np.sin(np.asarray(x) / 5.0) + 2.0,
        kernel=combo,
        omegas=(1.0, 0.8, 0.6, 0.5, 0.4),
    )
    report = mollifier_order_experiment(cfg)
    assert report.fitted_exponents["order"] == pytest.approx(4.0, abs=0.2)


def test_mollifier_order_constant_profile_flagged(bump):
    cfg = MollifierOrderConfig(
        q_callable=lambda x: np.full_like(np.asarray(x, dtype=float), 2.0),
        kernel=bump,
        omegas=(0.8, 0.4, 0.2),
    )
    report = mollifier_order_experiment(cfg)
    assert report.details["exact_reproduction"]
    assert "order" not in report.fitted_exponents


def test_cooling_metric_orderings(bump):
    grid = coarse_grid(snaps=(2.0,))
    specs = {
        "zero": PotentialSpec(kind="zero"),
        "dirac": PotentialSpec(kind="dirac", x0=40.0),
        "dirac_squared": PotentialSpec(kind="dirac_squared", x0=40.0),
    }
    from vwheat import ProblemSpec, SchemeConfig, regularize, sample_initial_bump, solve

    runs = {}
    for name, spec in specs.items():
        pot = regularize(spec, bump, OmegaSchedule("linear"), 0.2, grid)
        u0 = sample_initial_bump(50.0, grid)
        runs[name] = solve(ProblemSpec(grid, SchemeConfig(1.0), pot, u0))
    probe = cooling_metric(runs, x_probe=40.0, t=2.0, grid=grid)
    assert probe.kind == "ordering"
    assert probe.verdict

    pair = {k: runs[k] for k in ("zero", "dirac")}
    probe2 = cooling_metric(pair, x_probe=40.0, t=2.0, grid=grid)
    assert probe2.kind == "ratio"
    # dissipative dirac can only cool relative to free flow
    assert probe2.values["dirac"] <= probe2.values["zero"]


def test_cooling_metric_snaps_off_grid_probe(bump):
    grid = coarse_grid(snaps=(2.0,))
    from vwheat import ProblemSpec, SchemeConfig, regularize, sample_initial_bump, solve

    pot = regularize(PotentialSpec(kind="zero"), bump, OmegaSchedule("linear"), 0.2, grid)
    u0 = sample_initial_bump(50.0, grid)
    runs = {"zero": solve(ProblemSpec(grid, SchemeConfig(1.0), pot, u0)),
            "dirac": solve(ProblemSpec(grid, SchemeConfig(1.0), pot, u0))}
    with pytest.warns(UserWarning):
        probe = cooling_metric(runs, x_probe=40.003, t=2.0, grid=grid)
    assert probe.x == pytest.approx(40.0, abs=1e-9)


def test_figure_reports_without_output(tmp_path):
    report = figure_experiments("fig1")
    assert report.name == "fig1"
    assert report.artifacts == []
    assert all(c.verdict for c in report.checks)
    assert all(m["verdict"] for m in report.details["metrics"])


def test_figure_unknown_name():
    with pytest.raises(ValueError):
        figure_experiments("fig9")


def test_figure_writes_expected_files(tmp_path):
    out = tmp_path / "fig1"
    report = figure_experiments("fig1", output_dir=str(out))
    csvs = sorted(p.relative_to(out).as_posix() for p in out.rglob("*.csv"))
    assert len(csvs) == 10
    assert "u0.csv" in csvs
    assert sorted(report.artifacts) == csvs
    assert (out / "report.json").exists()

"""Implicit finite-difference solver for the 1-D heat equation with
mollified singular potentials, plus the regularization-net experiments
built on top of it.
"""

from .diagnostics import (
    EnergyReport,
    check_apriori_bound,
    check_energy_dissipation,
    check_gronwall_bound,
    check_l2_contraction,
    discrete_h1_seminorm,
    discrete_l2,
    energy_functional,
)
from .errors import (
    ConfigError,
    DegenerateFitError,
    DegenerateKernelError,
    InapplicableExperimentError,
    InsufficientDataError,
    InvalidEpsilonError,
    InvalidScaleError,
    OutOfRegimeError,
    PlacementError,
    SingularSystemError,
    UnderResolvedKernelWarning,
    UnsupportedOrderError,
)
from .experiments import (
    ConsistencyConfig,
    EpsilonNet,
    ExperimentReport,
    MollifierOrderConfig,
    NetConfig,
    OrderFit,
    ProbeComparison,
    UniquenessConfig,
    consistency_experiment,
    convergence_order,
    cooling_metric,
    figure_experiments,
    mollifier_order_experiment,
    reference_grid,
    run_epsilon_net,
    uniqueness_experiment,
)
from .kernels import (
    MollifierKernel,
    ScaledKernelView,
    derivative,
    eval_scaled,
    make_standard_bump,
    mollify,
    moment,
    scale,
    vanish_moments,
)
from .potentials import (
    ModeratenessFit,
    OmegaSchedule,
    PotentialSpec,
    RegularizedPotential,
    exact_potential,
    fit_moderateness_exponent,
    omega_of_eps,
    regularize,
)
from .solver import (
    PicardResult,
    ProblemSpec,
    SchemeConfig,
    SolutionSeries,
    SpaceTimeGrid,
    duhamel_picard_oracle,
    heat_kernel_exact,
    sample_initial_bump,
    solve,
    step,
    thomas_solve,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "ConsistencyConfig",
    "DegenerateFitError",
    "DegenerateKernelError",
    "EnergyReport",
    "EpsilonNet",
    "ExperimentReport",
    "InapplicableExperimentError",
    "InsufficientDataError",
    "InvalidEpsilonError",
    "InvalidScaleError",
    "ModeratenessFit",
    "MollifierKernel",
    "MollifierOrderConfig",
    "NetConfig",
    "OmegaSchedule",
    "OrderFit",
    "OutOfRegimeError",
    "PicardResult",
    "PlacementError",
    "PotentialSpec",
    "ProbeComparison",
    "ProblemSpec",
    "RegularizedPotential",
    "ScaledKernelView",
    "SchemeConfig",
    "SingularSystemError",
    "SolutionSeries",
    "SpaceTimeGrid",
    "UnderResolvedKernelWarning",
    "UniquenessConfig",
    "UnsupportedOrderError",
    "check_apriori_bound",
    "check_energy_dissipation",
    "check_gronwall_bound",
    "check_l2_contraction",
    "consistency_experiment",
    "convergence_order",
    "cooling_metric",
    "derivative",
    "discrete_h1_seminorm",
    "discrete_l2",
    "duhamel_picard_oracle",
    "energy_functional",
    "eval_scaled",
    "exact_potential",
    "figure_experiments",
    "fit_moderateness_exponent",
    "heat_kernel_exact",
    "make_standard_bump",
    "mollifier_order_experiment",
    "mollify",
    "moment",
    "omega_of_eps",
    "reference_grid",
    "regularize",
    "run_epsilon_net",
    "sample_initial_bump",
    "scale",
    "solve",
    "step",
    "thomas_solve",
    "uniqueness_experiment",
    "vanish_moments",
]

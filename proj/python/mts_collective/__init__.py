"""Metrical task systems: exact optimal transport, the k-agent discretizer,
collective realization, and the experiment pipeline."""

from mts_collective._core import (  # noqa: F401
    AgentAssignment,
    AgentMove,
    BallsUrnsStrategy,
    CollectiveRun,
    CostBreakdown,
    CostSequence,
    Coupling,
    DeterministicStrategy,
    DiscretizeResult,
    DiscretizerConfig,
    FixedCostTotals,
    FractionalStrategy,
    FractionalTrace,
    GreedyStrategy,
    IntegralTrajectory,
    MassVector,
    MetricSpace,
    OfflineOpt,
    ReassignResult,
    RunConfig,
    RunReport,
    StepCertificate,
    UniformFractionalStrategy,
    configuration_count,
    cruel_adversary,
    discretize,
    drain_step,
    enumerate_configurations,
    fixed_cost_accounting,
    fractional_cost,
    initial_assignment,
    load_trace,
    offline_opt,
    oscillating_trace,
    ot,
    ot_cost,
    phase_adversary,
    plan_is_optimal,
    potential,
    random_costs,
    random_trace,
    realize_collective,
    reassign,
    repair_shortest_paths,
    run,
    run_strategy,
    sample_branch,
    save_trace,
    select,
    select_initial,
    split_at_saturation,
    trajectory_cost,
    validate_metric,
    verify_necessary_condition,
    verify_trace,
)

__version__ = "0.1.0"

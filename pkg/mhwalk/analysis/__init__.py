"""Convergence analysis: KL divergence, bounds, exact kernels, simulations, audits, benchmarks."""

from mhwalk.analysis.divergence import (
    TargetDistribution,
    empirical_distribution,
    empirical_kl,
    kl_divergence,
)
from mhwalk.analysis.convergence import (
    high_weight_better,
    initial_distribution,
    kappa_for,
    kappa_generic,
    kappa_high_weight,
    kappa_random,
    kl_upper_bound,
    mh_coefficient_a,
)
from mhwalk.analysis.kernel import chain_marginals, mh_kernel
from mhwalk.analysis.simulation import (
    SimConfig,
    SimulationResult,
    default_ratio_grid,
    generate_target,
    run_init_simulation,
    run_simulation_grid,
)
from mhwalk.analysis.audit import AuditReport, StateAudit, audit_states, sample_states
from mhwalk.analysis.benchmark import (
    DEFAULT_SWEEP_VALUES,
    BenchConfig,
    BenchRow,
    measure_sampler,
    run_benchmark,
)

__all__ = [
    "TargetDistribution",
    "empirical_distribution",
    "empirical_kl",
    "kl_divergence",
    "high_weight_better",
    "initial_distribution",
    "kappa_for",
    "kappa_generic",
    "kappa_high_weight",
    "kappa_random",
    "kl_upper_bound",
    "mh_coefficient_a",
    "chain_marginals",
    "mh_kernel",
    "SimConfig",
    "SimulationResult",
    "default_ratio_grid",
    "generate_target",
    "run_init_simulation",
    "run_simulation_grid",
    "AuditReport",
    "StateAudit",
    "audit_states",
    "sample_states",
    "DEFAULT_SWEEP_VALUES",
    "BenchConfig",
    "BenchRow",
    "measure_sampler",
    "run_benchmark",
]

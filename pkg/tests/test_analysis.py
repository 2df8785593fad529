"""Tests for divergences, convergence bounds, simulations, audits and benchmarks."""

import math

import numpy as np
import pytest

from mhwalk.analysis import (
    AuditReport,
    BenchConfig,
    SimConfig,
    SimulationResult,
    StateAudit,
    TargetDistribution,
    audit_states,
    chain_marginals,
    default_ratio_grid,
    empirical_kl,
    generate_target,
    high_weight_better,
    initial_distribution,
    kappa_for,
    kappa_generic,
    kappa_high_weight,
    kappa_random,
    kl_divergence,
    kl_upper_bound,
    measure_sampler,
    mh_coefficient_a,
    mh_kernel,
    run_benchmark,
    run_init_simulation,
    run_simulation_grid,
    sample_states,
)
from mhwalk.analysis import audit, simulation
from mhwalk.engine import SamplerKind
from mhwalk.errors import DistributionError, SimulationConfigError
from mhwalk.graph import (
    Graph,
    heavy_tailed_graph,
    random_graph,
    star_graph,
    typed_random_graph,
)
from mhwalk.models import DeepWalkModel, Metapath2VecModel, ModelKind, Node2VecModel
from mhwalk.samplers import InitKind, InitStrategy


@pytest.fixture
def skewed() -> TargetDistribution:
    """Four outcomes with two maxima."""
    return TargetDistribution(np.array([0.4, 0.4, 0.1, 0.1]))


def random_targets(count: int, seed: int, max_size: int = 39) -> list:
    """Dirichlet targets of mixed size (2 to ``max_size``) and skew, some with tied maxima."""
    rng = np.random.default_rng(seed)
    targets = []
    for _ in range(count):
        n = int(rng.integers(2, max_size + 1))
        weights = rng.dirichlet(np.full(n, rng.choice([0.2, 1.0, 5.0])))
        weights = np.maximum(weights, 1e-6)
        if rng.random() < 0.3:
            ties = int(rng.integers(1, n))
            weights[:ties] = weights.max()
        targets.append(TargetDistribution.from_weights(weights))
    return targets


class TestDivergence:
    """Tests for target distributions and KL divergence."""

    def test_identical(self, skewed: TargetDistribution) -> None:
        """Test that KL of a distribution from itself is 0."""
        assert kl_divergence(skewed, skewed) == 0.0

    def test_point_mass_against_fair_coin(self) -> None:
        """Test KL([1, 0] || [0.5, 0.5]) = log 2."""
        assert kl_divergence([1.0, 0.0], [0.5, 0.5]) == pytest.approx(math.log(2))

    def test_support_violation(self) -> None:
        """Test that q = 0 where p > 0 is a domain error."""
        with pytest.raises(DistributionError):
            kl_divergence([0.5, 0.5], [1.0, 0.0])

    def test_shape_mismatch(self) -> None:
        """Test that vectors of different length are rejected."""
        with pytest.raises(DistributionError):
            kl_divergence([1.0], [0.5, 0.5])

    def test_empirical(self) -> None:
        """Test KL of counts matching the target exactly."""
        target = TargetDistribution.from_weights([1.0, 2.0, 1.0])
        assert empirical_kl([25, 50, 25], target) == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize(
        "probs", [[0.5, 0.5, 0.0], [0.6, 0.6], [], [np.nan, 1.0]]
    )
    def test_invalid_target(self, probs: list) -> None:
        """Test that targets must be positive and normalized."""
        with pytest.raises(DistributionError):
            TargetDistribution(np.array(probs, dtype=float))

    def test_ties(self, skewed: TargetDistribution) -> None:
        """Test maxima, spread and uniformity."""
        assert skewed.t == 2
        assert skewed.maxima.tolist() == [0, 1]
        assert skewed.ratio == pytest.approx(4.0)
        assert not skewed.is_uniform
        assert TargetDistribution.from_weights(np.ones(5)).is_uniform


class TestConvergence:
    """Tests for the closed-form convergence quantities."""

    def test_coefficient_uniform(self) -> None:
        """Test that a uniform target gives a = 1."""
        assert mh_coefficient_a(np.full(8, 1 / 8)) == pytest.approx(1.0)

    def test_coefficient_example(self) -> None:
        """Test a = 1 / (3 * 0.5) = 2/3."""
        assert mh_coefficient_a([0.5, 0.25, 0.25]) == pytest.approx(2 / 3)

    def test_coefficient_non_uniform(self) -> None:
        """Test 0 < a < 1 for random non-uniform targets."""
        for target in random_targets(200, seed=1):
            if not target.is_uniform:
                assert 0 < mh_coefficient_a(target) < 1

    def test_coefficient_degree(self, skewed: TargetDistribution) -> None:
        """Test a wider proposal and a too narrow one."""
        assert mh_coefficient_a(skewed, degree=5) == pytest.approx(0.5)
        with pytest.raises(DistributionError):
            mh_coefficient_a(skewed, degree=3)

    def test_bound_examples(self) -> None:
        """Test the bound vanishes for a = 1 and equals 0.3125 for kappa=1, a=0.5, i=2."""
        assert kl_upper_bound(2.0, 1.0, 1) == 0.0
        assert kl_upper_bound(1.0, 0.5, 2) == pytest.approx(0.3125)

    @pytest.mark.parametrize("kappa, a, steps", [(-1.0, 0.5, 1), (1.0, 0.0, 1), (1.0, 0.5, -1)])
    def test_bound_invalid(self, kappa: float, a: float, steps: int) -> None:
        """Test that out-of-range arguments are rejected."""
        with pytest.raises(ValueError):
            kl_upper_bound(kappa, a, steps)

    def test_kappa_example(self, skewed: TargetDistribution) -> None:
        """Test kappa_h = 1 and kappa_r = 1.5 for [0.4, 0.4, 0.1, 0.1]."""
        assert kappa_for("high-weight", skewed) == pytest.approx(1.0)
        assert kappa_for(InitKind.RANDOM, skewed) == pytest.approx(1.5)
        assert kappa_for(InitKind.BURN_IN, skewed) == pytest.approx(1.5)

    def test_kappa_uniform(self) -> None:
        """Test that both strategies start stationary on a uniform target."""
        uniform = TargetDistribution.from_weights(np.ones(6))
        assert kappa_random(uniform) == 0.0
        assert kappa_high_weight(uniform) == 0.0

    def test_closed_forms_match_definition(self) -> None:
        """Test the closed forms against max |pi0 / pi - 1| on random targets."""
        for target in random_targets(1000, seed=2):
            for kind in (InitKind.RANDOM, InitKind.HIGH_WEIGHT):
                generic = kappa_generic(initial_distribution(kind, target), target)
                assert kappa_for(kind, target) == pytest.approx(generic, rel=1e-9, abs=1e-12)

    def test_condition_matches_kappa_order(self) -> None:
        """Test that the high-weight condition holds exactly when kappa_h < kappa_r."""
        checked = 0
        for target in random_targets(10_000, seed=3):
            kappa_h = kappa_high_weight(target)
            kappa_r = kappa_random(target)
            if high_weight_better(target):
                assert kappa_h < kappa_r
            if abs(kappa_h - kappa_r) > 1e-9 and abs(target.pi_min * 2 * target.n - 1) > 1e-9:
                assert high_weight_better(target) == (kappa_h < kappa_r)
                checked += 1
        assert checked > 9000

    def test_condition_examples(self) -> None:
        """Test the condition at spread just above and below n / t = 5."""
        assert not high_weight_better(np.full(10, 0.1))

        def target(ratio: float) -> TargetDistribution:
            weights = np.full(1000, 1.5)
            weights[:200] = ratio
            weights[200] = 1.0
            return TargetDistribution.from_weights(weights)

        above = target(5.01)
        assert above.pi_max < 1 / 400
        assert high_weight_better(above)
        assert not high_weight_better(target(4.99))

    def test_initial_distributions(self, skewed: TargetDistribution) -> None:
        """Test the starting distributions of both strategies."""
        assert initial_distribution("high_weight", skewed).tolist() == [0.5, 0.5, 0.0, 0.0]
        assert initial_distribution("random", skewed).tolist() == [0.25] * 4


class TestKernel:
    """Tests for the exact M-H kernel."""

    def test_detailed_balance(self) -> None:
        """Test pi_i P_ij = pi_j P_ji on random supports up to 16."""
        rng = np.random.default_rng(4)
        for n in range(2, 17):
            probs = rng.dirichlet(np.ones(n))
            kernel = mh_kernel(probs)
            flow = probs[:, np.newaxis] * kernel
            assert np.allclose(flow, flow.T, atol=1e-15)
            assert np.allclose(kernel.sum(axis=1), 1.0)
            assert np.all(kernel >= 0)
            assert np.allclose(probs @ kernel, probs)

    def test_bound_dominates_exact_divergence(self) -> None:
        """Test KL(pi_i || pi) <= bound for both strategies over 200 steps, supports <= 32."""
        for target in random_targets(100, seed=5, max_size=32):
            kernel = mh_kernel(target)
            a = mh_coefficient_a(target)
            for kind in (InitKind.RANDOM, InitKind.HIGH_WEIGHT):
                kappa = kappa_for(kind, target)
                marginals = chain_marginals(kernel, initial_distribution(kind, target), 200)
                for step, marginal in enumerate(marginals):
                    exact = kl_divergence(marginal, target)
                    assert exact <= kl_upper_bound(kappa, a, step) + 1e-12

    def test_marginal_shape_checked(self) -> None:
        """Test that a start vector of the wrong length is rejected."""
        with pytest.raises(DistributionError):
            chain_marginals(np.eye(3), np.ones(2) / 2, 4)


class TestSimulation:
    """Tests for the initialization-strategy simulation."""

    def test_small_target(self) -> None:
        """Test that n=3, t=1, ratio=2 gives weights [2, 1, u] with u in (1, 2)."""
        rng = np.random.default_rng(0)
        target = generate_target(SimConfig(n=3, t=1, ratio=2.0), rng)
        weights = target.probs / target.pi_min
        assert weights[0] == pytest.approx(2.0)
        assert weights[1] == pytest.approx(1.0)
        assert 1.0 < weights[2] < 2.0
        assert target.ratio == pytest.approx(2.0)

    def test_target_structure(self) -> None:
        """Test that generated targets have exactly t maxima and the requested spread."""
        rng = np.random.default_rng(1)
        config = SimConfig(n=100, t=10, ratio=5.0)
        for _ in range(20):
            target = generate_target(config, rng)
            assert target.t == 10
            assert target.ratio == pytest.approx(5.0, rel=1e-12)

    def test_unit_ratio_is_uniform(self) -> None:
        """Test that ratio 1 yields the uniform target."""
        target = generate_target(SimConfig(n=20, t=4, ratio=1.0), np.random.default_rng(0))
        assert target.is_uniform

    @pytest.mark.parametrize(
        "kwargs",
        [{"n": 10, "t": 10}, {"n": 10, "t": 0}, {"ratio": 0.5}, {"repeats": 0}],
    )
    def test_infeasible(self, kwargs: dict) -> None:
        """Test that infeasible target families are rejected."""
        with pytest.raises(SimulationConfigError):
            SimConfig(**kwargs)

    def test_default_samples(self) -> None:
        """Test that each run draws 5n samples by default."""
        assert SimConfig(n=40, t=4).samples_per_run == 200

    def test_uniform_strategies_coincide_when_coupled(self) -> None:
        """Test that on uniform targets coupled strategies give identical KL."""
        config = SimConfig(
            n=20, t=5, ratio=1.0, distributions=5, repeats=3, seed=3, coupled=True
        )
        result = run_init_simulation(config)
        assert result.kl_random == result.kl_high
        assert result.kl_ratio == 1.0

    def test_strategies_use_separate_streams(self) -> None:
        """Test that uncoupled strategies draw different chains even on uniform targets."""
        config = SimConfig(n=20, t=5, ratio=1.0, distributions=5, repeats=3, seed=3)
        result = run_init_simulation(config)
        assert result.kl_random != result.kl_high
        assert result.kl_random > 0 and result.kl_high > 0

    def test_start_counts_as_first_sample(self) -> None:
        """Test that a one-sample run scores its starting state."""
        config = SimConfig(n=2, t=1, ratio=3.0, distributions=3, repeats=2, samples_per_run=1)
        result = run_init_simulation(config)
        assert result.kl_high == pytest.approx(math.log(4 / 3))
        assert result.kl_random >= result.kl_high

    def test_single_transition_from_maximum(self) -> None:
        """Test two samples from the larger of two states against the exact expectation."""
        config = SimConfig(
            n=2, t=1, ratio=3.0, distributions=400, repeats=5, samples_per_run=2, seed=4
        )
        result = run_init_simulation(config)
        # Staying (prob 5/6) gives [1, 0]; moving (prob 1/6) gives [1/2, 1/2].
        stay = math.log(4 / 3)
        move = 0.5 * math.log(2 / 3) + 0.5 * math.log(2)
        expected = (5 / 6) * stay + (1 / 6) * move
        assert result.kl_high == pytest.approx(expected, abs=0.01)

    def test_deterministic_and_thread_independent(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that the result depends on the seed only."""
        monkeypatch.setattr(simulation, "_CHUNK_BUDGET", 1)
        config = SimConfig(n=15, t=3, ratio=8.0, distributions=6, repeats=2, seed=11)
        single = run_init_simulation(config)
        threaded = run_init_simulation(config, workers=3)
        assert single == threaded
        assert single.kl_random >= 0 and single.kl_high >= 0

        other = run_init_simulation(
            SimConfig(n=15, t=3, ratio=8.0, distributions=6, repeats=2, seed=12)
        )
        assert other != single

    def test_kl_ratio_edge_cases(self) -> None:
        """Test ratios when a mean KL is zero."""
        assert SimulationResult(5, 1, 2.0, 0.0, 0.0).kl_ratio == 1.0
        assert SimulationResult(5, 1, 2.0, 0.1, 0.0).kl_ratio == math.inf
        row = SimulationResult(5, 1, 2.0, 0.3, 0.1).to_row()
        assert list(row) == simulation.CSV_COLUMNS
        assert row["kl_ratio"] == pytest.approx(3.0)

    def test_default_grid(self) -> None:
        """Test the spread grid around n / t."""
        assert default_ratio_grid(1000, 200) == [1.0, 2.0, 2.5, 5.0, 10.0, 50.0]
        assert default_ratio_grid(10, 10) == [1.0, 2.0, 10.0]

    def test_grid(self) -> None:
        """Test one result per spread value."""
        results = run_simulation_grid(
            12, 3, ratios=[1.0, 4.0], distributions=2, repeats=2, samples_per_run=30, coupled=True
        )
        assert [r.ratio for r in results] == [1.0, 4.0]
        assert all(r.n == 12 and r.t == 3 for r in results)
        assert results[0].kl_ratio == 1.0

    @pytest.mark.slow
    def test_high_spread_favors_high_weight(self) -> None:
        """Test that at spread 50 random initialization has the larger mean KL."""
        config = SimConfig(
            n=1000, t=200, ratio=50.0, distributions=100, repeats=5, seed=7, coupled=True
        )
        result = run_init_simulation(config)
        assert result.kl_ratio > 1.0


class TestAudit:
    """Tests for per-state sampler audits."""

    def test_sample_states_first_order(self) -> None:
        """Test that deepwalk states are distinct nodes."""
        graph = random_graph(30, 60, seed=1)
        states = sample_states(DeepWalkModel(graph), 10, seed=2)
        assert len({s.position for s in states}) == 10
        assert all(s.affixture == -1 for s in states)

    def test_sample_states_second_order(self) -> None:
        """Test that node2vec states have valid affixtures."""
        graph = random_graph(30, 60, seed=1)
        states = sample_states(Node2VecModel(graph), 500, seed=2)
        assert len(states) == graph.arc_count
        assert len(set(states)) == len(states)
        assert all(0 <= s.affixture < graph.degree(s.position) for s in states)

    def test_sample_states_metapath(self) -> None:
        """Test that metapath2vec states sit on nodes of the matching cycle type."""
        graph = typed_random_graph(30, 80, 2, seed=4)
        model = Metapath2VecModel(graph, [0, 1])
        for state in sample_states(model, 20, seed=1):
            previous_entry = (state.affixture - 1) % model.period
            assert graph.node_type(state.position) == model.cycle[previous_entry]

    @pytest.mark.parametrize("kind", list(SamplerKind))
    def test_samplers_pass(self, kind: SamplerKind) -> None:
        """Test that every sampler matches the exact distributions closely."""
        graph = typed_random_graph(40, 150, 2, seed=6, weighted=True)
        model = Node2VecModel(graph, p=0.5, q=2.0)
        states = sample_states(model, 5, seed=0)
        report = audit_states(model, states, draws=20_000, seed=1, sampler_kind=kind, discard=100)
        assert len(report.rows) == 5
        assert report.passed(0.01)
        assert not report.passed(0.0)
        assert all(row.outside_support == 0 for row in report.rows)
        assert 0.0 <= report.condition_fraction <= 1.0

    def test_zero_support_skipped(self) -> None:
        """Test that states without positive-weight candidates are skipped."""
        graph = Graph.from_arcs(3, [0, 1], [1, 2], symmetrize=True)
        graph = graph.with_node_types(np.array([0, 0, 1]))
        model = Metapath2VecModel(graph, [0, 1])
        states = sample_states(model, 10, seed=0)
        report = audit_states(model, states, draws=500)
        assert report.skipped_states + len(report.rows) == len(states)
        assert report.skipped_states >= 1

    def test_empty_report(self) -> None:
        """Test that an empty audit never passes."""
        report = AuditReport()
        assert report.max_kl == 0.0
        assert not report.passed(1.0)

    def test_csv_rows_end_with_max(self) -> None:
        """Test that the CSV rows close with a max row carrying the largest KL."""
        report = AuditReport(
            rows=[StateAudit(3, -1, 4, 4, 0.002), StateAudit(5, -1, 2, 2, 0.007)]
        )
        rows = report.csv_rows()
        assert [row["position"] for row in rows] == [3, 5, audit.MAX_ROW_LABEL]
        assert rows[-1]["kl"] == pytest.approx(0.007)
        assert set(rows[-1]) <= set(audit.CSV_COLUMNS)


class TestBenchmark:
    """Tests for sampler benchmarks."""

    def test_config_validation(self) -> None:
        """Test rejected benchmark settings."""
        with pytest.raises(ValueError):
            BenchConfig(samplers=[])
        with pytest.raises(ValueError):
            BenchConfig(sweep="r")
        assert BenchConfig(samplers=["mh"]).samplers == [SamplerKind.MH]

    def test_rejection_without_bias(self) -> None:
        """Test that rejection sampling accepts every proposal for p = q = 1."""
        graph = random_graph(100, 400, seed=2)
        config = BenchConfig(samplers=[SamplerKind.REJECTION], steps=2000, walk_length=20)
        rows = run_benchmark(graph, ModelKind.NODE2VEC, config)
        assert len(rows) == 1
        assert rows[0].steps == 2000
        assert rows[0].acceptance_ratio == 1.0

    def test_rejection_with_return_bias(self) -> None:
        """Test that p = 0.25 on a heavy-tailed graph accepts under half of the proposals."""
        graph = heavy_tailed_graph(500, 5, seed=3)
        config = BenchConfig(samplers=[SamplerKind.REJECTION], steps=5000, walk_length=20)
        row = measure_sampler(graph, ModelKind.NODE2VEC, SamplerKind.REJECTION, config, p=0.25)
        assert row.steps == 5000
        assert row.acceptance_ratio < 0.5
        assert row.acceptance_ratio > 0.2

    @pytest.mark.slow
    def test_constant_time_mh_linear_time_direct(self) -> None:
        """Test per-step cost on stars of 10 and 10,000 leaves: flat for M-H, linear for direct."""
        small, large = star_graph(10), star_graph(10_000)
        init = InitStrategy(InitKind.RANDOM)

        def rate(graph: Graph, kind: SamplerKind, steps: int) -> float:
            config = BenchConfig(samplers=[kind], steps=steps, walk_length=80, init=init)
            row = measure_sampler(graph, ModelKind.DEEPWALK, kind, config)
            assert row.steps == steps
            return row.steps_per_sec

        mh_small = rate(small, SamplerKind.MH, 20_000)
        mh_large = rate(large, SamplerKind.MH, 20_000)
        assert mh_small / mh_large < 3.0

        direct_small = rate(small, SamplerKind.DIRECT, 2000)
        direct_large = rate(large, SamplerKind.DIRECT, 200)
        assert direct_small / direct_large > 100.0

    def test_sweep(self) -> None:
        """Test one row per sampler and sweep value."""
        graph = random_graph(50, 200, seed=2)
        config = BenchConfig(
            samplers=[SamplerKind.MH, SamplerKind.ALIAS],
            steps=300,
            walk_length=10,
            sweep="p",
            sweep_values=[0.5, 2.0],
        )
        rows = run_benchmark(graph, "node2vec", config, q=4.0)
        assert [(r.sampler, r.p, r.q) for r in rows] == [
            ("mh", 0.5, 4.0),
            ("alias", 0.5, 4.0),
            ("mh", 2.0, 4.0),
            ("alias", 2.0, 4.0),
        ]
        assert all(r.steps == 300 for r in rows)
        assert rows[1].acceptance_ratio == 1.0

    def test_no_edges_terminates(self) -> None:
        """Test that a graph without arcs finishes with zero steps."""
        graph = Graph.from_arcs(4, [], [])
        config = BenchConfig(samplers=[SamplerKind.MH], steps=100)
        row = measure_sampler(graph, ModelKind.DEEPWALK, SamplerKind.MH, config)
        assert row.steps == 0
        assert row.steps_per_sec >= 0.0

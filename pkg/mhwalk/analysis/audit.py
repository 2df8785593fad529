"""Per-state audit: empirical sampler output against the model's exact distribution."""

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from mhwalk.analysis.convergence import high_weight_better
from mhwalk.analysis.divergence import TargetDistribution, kl_divergence
from mhwalk.engine.config import SamplerKind
from mhwalk.engine.edge_samplers import build_edge_sampler
from mhwalk.errors import SamplerDeadEnd
from mhwalk.models.state import NONE, WalkerState
from mhwalk.models.walk_model import Metapath2VecModel, WalkModel
from mhwalk.samplers.mh import InitStrategy
from mhwalk.samplers.random_stream import RandomStream

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    "position",
    "affixture",
    "degree",
    "support",
    "kl",
    "outside_support",
    "high_weight_condition",
]

# Position column of the summary row closing an audit CSV
MAX_ROW_LABEL = "max"


@dataclass
class StateAudit:
    """Audit of one walker state."""
    position: int
    affixture: int
    degree: int
    support: int
    kl: float
    outside_support: int = 0
    high_weight_condition: bool = False

    def to_row(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class AuditReport:
    """All audited states plus the states skipped for lack of support."""
    rows: List[StateAudit] = field(default_factory=list)
    skipped_states: int = 0

    @property
    def max_kl(self) -> float:
        return max((row.kl for row in self.rows), default=0.0)

    @property
    def mean_kl(self) -> float:
        return float(np.mean([row.kl for row in self.rows])) if self.rows else 0.0

    @property
    def condition_fraction(self) -> float:
        """Share of audited states where high-weight initialization has the tighter bound."""
        if not self.rows:
            return 0.0
        return sum(row.high_weight_condition for row in self.rows) / len(self.rows)

    def passed(self, tolerance: float) -> bool:
        """Every audited state is below ``tolerance``; an empty audit never passes."""
        return bool(self.rows) and self.max_kl < tolerance

    def csv_rows(self) -> List[Dict[str, Any]]:
        """One row per audited state, then a summary row with position ``max``."""
        rows = [row.to_row() for row in self.rows]
        rows.append({"position": MAX_ROW_LABEL, "kl": self.max_kl})
        return rows


def sample_states(model: WalkModel, count: int, seed: int = 0) -> List[WalkerState]:
    """Up to ``count`` distinct states a walker of ``model`` can occupy, chosen at random."""
    graph = model.graph
    rng = np.random.Generator(np.random.Philox(seed))

    if model.second_order:
        population = graph.arc_count
        picks = rng.choice(population, size=min(count, population), replace=False)
        positions = np.searchsorted(graph.offsets, picks, side="right") - 1
        return [
            WalkerState(int(v), int(s - graph.offsets[v])) for v, s in zip(positions, picks)
        ]

    if isinstance(model, Metapath2VecModel):
        cycle = model.cycle
        candidates = [
            WalkerState(v, (j + 1) % len(cycle))
            for v in range(graph.node_count)
            for j, required in enumerate(cycle)
            if graph.node_type(v) == required
        ]
        if not candidates:
            return []
        picks = rng.choice(len(candidates), size=min(count, len(candidates)), replace=False)
        return [candidates[int(i)] for i in picks]

    picks = rng.choice(graph.node_count, size=min(count, graph.node_count), replace=False)
    return [WalkerState(int(v), NONE) for v in picks]


def audit_states(
    model: WalkModel,
    states: Sequence[WalkerState],
    draws: int,
    seed: int = 0,
    sampler_kind: SamplerKind = SamplerKind.MH,
    strategy: Optional[InitStrategy] = None,
    discard: int = 0,
) -> AuditReport:
    """Draw ``draws`` samples per state and measure KL(empirical, exact).

    Draws outside the exact support make the KL infinite and are counted.

    Args:
        model: Bound walk model
        states: States to audit
        draws: Retained draws per state
        seed: Seed of the per-state random streams
        sampler_kind: Edge sampler under audit
        strategy: M-H initialization strategy
        discard: Draws discarded before counting

    Returns:
        Audit report, one row per state with positive-weight candidates
    """
    if draws < 1:
        raise ValueError(f"draws must be >= 1, got {draws}")
    sampler = build_edge_sampler(sampler_kind, model, strategy or InitStrategy())
    report = AuditReport()

    for index, state in enumerate(states):
        weights = model.transition_weights(state)
        support = weights > 0
        if not support.any():
            report.skipped_states += 1
            continue

        stream = RandomStream.from_seed(seed, index)
        counts = np.zeros(weights.shape[0], dtype=np.int64)
        try:
            for _ in range(discard):
                sampler.sample(state, stream)
            for _ in range(draws):
                counts[sampler.sample(state, stream).neighbor_index] += 1
        except SamplerDeadEnd:
            report.skipped_states += 1
            continue

        target = TargetDistribution.from_weights(weights[support])
        outside = int(counts[~support].sum())
        kl = math.inf if outside else kl_divergence(counts[support] / draws, target)
        report.rows.append(
            StateAudit(
                position=state.position,
                affixture=state.affixture,
                degree=int(weights.shape[0]),
                support=int(support.sum()),
                kl=kl,
                outside_support=outside,
                high_weight_condition=high_weight_better(target),
            )
        )

    logger.info(
        f"Audited {len(report.rows)} states of {model.kind.value} with {sampler_kind.value}: "
        f"max KL {report.max_kl:.6f}, high-weight condition holds for "
        f"{report.condition_fraction:.1%}"
    )
    if report.skipped_states:
        logger.warning(f"Skipped {report.skipped_states} states without positive-weight edges")
    return report

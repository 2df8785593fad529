"""Empirical comparison of random and high-weight initialization.

For each target the M-H chain (uniform proposal over the whole support) is
run ``repeats`` times for ``samples_per_run`` draws under each strategy and
the KL divergence of the empirical distribution from the target is averaged.
The starting sample counts as the first draw.

Each strategy runs on its own random stream by default. With ``coupled``
both strategies share their start picks, proposals and thresholds; every
chain keeps its law, but the difference between strategies loses most of
its sampling noise.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import rel_entr

from mhwalk.analysis.divergence import TargetDistribution
from mhwalk.errors import SimulationConfigError

logger = logging.getLogger(__name__)

# Upper bound on recorded chain states held in memory per chunk
_CHUNK_BUDGET = 10_000_000

CSV_COLUMNS = ["n", "t", "ratio", "kl_random", "kl_high", "kl_ratio"]


@dataclass
class SimConfig:
    """One cell of the simulation grid."""
    n: int = 1000
    t: int = 200
    ratio: float = 5.0
    distributions: int = 1000
    repeats: int = 20
    samples_per_run: Optional[int] = None  # 5n when omitted
    seed: int = 0
    coupled: bool = False

    def __post_init__(self) -> None:
        if self.t < 1:
            raise SimulationConfigError(f"t must be >= 1, got {self.t}")
        if self.n < self.t + 1:
            raise SimulationConfigError(
                f"n={self.n} cannot hold {self.t} maximal entries and a distinct minimum"
            )
        if not self.ratio >= 1 or not np.isfinite(self.ratio):
            raise SimulationConfigError(f"ratio must be a finite value >= 1, got {self.ratio}")
        if self.distributions < 1 or self.repeats < 1:
            raise SimulationConfigError("distributions and repeats must be >= 1")
        if self.samples_per_run is None:
            self.samples_per_run = 5 * self.n
        if self.samples_per_run < 1:
            raise SimulationConfigError(
                f"samples_per_run must be >= 1, got {self.samples_per_run}"
            )

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return asdict(self)


@dataclass
class SimulationResult:
    """Mean KL divergence per strategy for one grid cell."""
    n: int
    t: int
    ratio: float
    kl_random: float
    kl_high: float

    @property
    def kl_ratio(self) -> float:
        """KL under random initialization over KL under high-weight initialization."""
        if self.kl_high > 0:
            return self.kl_random / self.kl_high
        return 1.0 if self.kl_random == 0 else float("inf")

    def to_row(self) -> Dict[str, Any]:
        row = asdict(self)
        row["kl_ratio"] = self.kl_ratio
        return row


def generate_target(config: SimConfig, rng: np.random.Generator) -> TargetDistribution:
    """Random target with exactly ``t`` maximal entries and spread ``ratio``.

    Weights: ``t`` entries equal to ``ratio``, one entry equal to 1 and the rest
    uniform on the open interval (1, ratio).
    """
    n, t, ratio = config.n, config.t, float(config.ratio)
    weights = np.empty(n, dtype=np.float64)
    weights[:t] = ratio
    weights[t] = 1.0
    rest = n - t - 1
    if rest:
        if ratio > 1.0:
            weights[t + 1:] = rng.uniform(np.nextafter(1.0, np.inf), ratio, size=rest)
        else:
            weights[t + 1:] = 1.0
    return TargetDistribution.from_weights(weights)


def _propose(
    probs: np.ndarray, rows: np.ndarray, rng: np.random.Generator
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Uniform candidate, acceptance threshold and candidate weight for every chain."""
    candidate = rng.integers(0, probs.shape[1], size=probs.shape[0])
    threshold = rng.random(probs.shape[0])
    return candidate, threshold, probs[rows, candidate]


def _chain_kls(
    probs: np.ndarray,
    starts: Sequence[np.ndarray],
    steps: int,
    rngs: Sequence[np.random.Generator],
    coupled: bool = False,
) -> List[np.ndarray]:
    """Run one chain per row of ``probs`` from each start vector; KL per chain.

    Start vector ``k`` draws from ``rngs[k]``, or every start vector draws
    from ``rngs[0]`` when ``coupled``. A chain records its start, then
    ``steps - 1`` transitions.
    """
    chains, n = probs.shape
    rows = np.arange(chains)
    current = [start.copy() for start in starts]
    visits = [np.empty((steps, chains), dtype=np.int64) for _ in current]
    for state, record in zip(current, visits):
        record[0] = state

    for step in range(1, steps):
        shared = _propose(probs, rows, rngs[0]) if coupled else None
        for index, (state, record) in enumerate(zip(current, visits)):
            draws = shared if shared is not None else _propose(probs, rows, rngs[index])
            candidate, threshold, candidate_weight = draws
            accept = threshold * probs[rows, state] < candidate_weight
            np.copyto(state, candidate, where=accept)
            record[step] = state

    kls = []
    for record in visits:
        flat = (rows[np.newaxis, :] * n + record).ravel()
        counts = np.bincount(flat, minlength=chains * n).reshape(chains, n)
        kls.append(rel_entr(counts / steps, probs).sum(axis=1))
    return kls


def _simulate_chunk(
    config: SimConfig, distributions: int, rng: np.random.Generator
) -> Tuple[float, float]:
    """Sum of per-run KLs of ``distributions`` targets under both strategies."""
    targets = [generate_target(config, rng) for _ in range(distributions)]
    repeats = config.repeats
    probs = np.repeat(np.stack([target.probs for target in targets]), repeats, axis=0)
    chains = probs.shape[0]

    if config.coupled:
        streams = [rng]
        random_picks = high_picks = rng.random(chains)
    else:
        streams = rng.spawn(2)
        random_picks = streams[0].random(chains)
        high_picks = streams[1].random(chains)

    starts_random = np.minimum((random_picks * config.n).astype(np.int64), config.n - 1)
    starts_high = np.empty_like(starts_random)
    for chain, pick in enumerate(high_picks):
        maxima = targets[chain // repeats].maxima
        starts_high[chain] = maxima[min(int(pick * maxima.shape[0]), maxima.shape[0] - 1)]

    kl_random, kl_high = _chain_kls(
        probs,
        [starts_random, starts_high],
        int(config.samples_per_run),
        streams,
        coupled=config.coupled,
    )
    return float(kl_random.sum()), float(kl_high.sum())


def run_init_simulation(
    config: SimConfig, rng: Optional[np.random.Generator] = None, workers: int = 1
) -> SimulationResult:
    """Mean KL(empirical, target) under random and high-weight initialization.

    Targets are processed in chunks, each with its own child generator, so the
    result depends on the seed and not on ``workers``.
    """
    if rng is None:
        rng = np.random.Generator(np.random.Philox(config.seed))
    steps = int(config.samples_per_run)
    per_chunk = max(1, _CHUNK_BUDGET // (steps * config.repeats * 2))
    sizes = [
        min(per_chunk, config.distributions - start)
        for start in range(0, config.distributions, per_chunk)
    ]
    child_rngs = rng.spawn(len(sizes))

    if workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            sums = list(
                executor.map(lambda args: _simulate_chunk(config, *args), zip(sizes, child_rngs))
            )
    else:
        sums = [_simulate_chunk(config, size, child) for size, child in zip(sizes, child_rngs)]

    runs = config.distributions * config.repeats
    result = SimulationResult(
        n=config.n,
        t=config.t,
        ratio=float(config.ratio),
        kl_random=sum(s[0] for s in sums) / runs,
        kl_high=sum(s[1] for s in sums) / runs,
    )
    logger.info(
        f"n={result.n} t={result.t} ratio={result.ratio:g}: "
        f"KL random {result.kl_random:.5f}, high-weight {result.kl_high:.5f}, "
        f"ratio {result.kl_ratio:.3f}"
    )
    return result


def default_ratio_grid(n: int, t: int) -> List[float]:
    """Spread values {1, 2, n/2t, n/t, 2n/t, 10n/t}, clipped to >= 1, sorted and unique."""
    if n < 1 or t < 1:
        raise SimulationConfigError(f"n and t must be >= 1, got n={n}, t={t}")
    base = n / t
    candidates = [1.0, 2.0, base / 2, base, 2 * base, 10 * base]
    return sorted({max(1.0, float(value)) for value in candidates})


def run_simulation_grid(
    n: int,
    t: int,
    ratios: Optional[Sequence[float]] = None,
    distributions: int = 1000,
    repeats: int = 20,
    samples_per_run: Optional[int] = None,
    seed: int = 0,
    workers: int = 1,
    coupled: bool = False,
) -> List[SimulationResult]:
    """One simulation per spread value; each cell is seeded from ``(seed, cell index)``."""
    if ratios is None:
        ratios = default_ratio_grid(n, t)
    results = []
    for index, ratio in enumerate(ratios):
        config = SimConfig(
            n=n,
            t=t,
            ratio=float(ratio),
            distributions=distributions,
            repeats=repeats,
            samples_per_run=samples_per_run,
            seed=seed,
            coupled=coupled,
        )
        sequence = np.random.SeedSequence(seed, spawn_key=(index,))
        rng = np.random.Generator(np.random.Philox(sequence))
        results.append(run_init_simulation(config, rng, workers=workers))
    return results

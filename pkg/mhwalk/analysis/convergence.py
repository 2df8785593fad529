"""Convergence bounds of the uniform-proposal M-H chain.

For a target ``pi`` over ``n`` outcomes the chain contracts geometrically
with rate ``rho = 1 - a`` where ``a = 1 / (n * pi_max)``, and

    KL(pi_i, pi) <= kappa * rho**i * (1 + kappa * rho**i),
    kappa = max_j |pi_0[j] / pi[j] - 1|.

``kappa`` depends on how the chain is initialized: uniformly at random, or
uniformly among the maximal entries (high-weight initialization).
"""

from typing import Optional, Union

import numpy as np

from mhwalk.analysis.divergence import DistributionLike, TargetDistribution
from mhwalk.errors import DistributionError
from mhwalk.samplers.mh import InitKind


def _as_target(dist: DistributionLike) -> TargetDistribution:
    if isinstance(dist, TargetDistribution):
        return dist
    return TargetDistribution(np.asarray(dist, dtype=np.float64))


def _as_kind(kind: Union[str, InitKind]) -> InitKind:
    if isinstance(kind, InitKind):
        return kind
    return InitKind(kind.replace("-", "_"))


def mh_coefficient_a(dist: DistributionLike, degree: Optional[int] = None) -> float:
    """Minorization coefficient ``1 / (degree * pi_max)`` of the uniform proposal.

    Args:
        dist: Target distribution
        degree: Proposal support size (defaults to the target's support size)

    Raises:
        DistributionError: If ``degree`` is smaller than the support
    """
    target = _as_target(dist)
    degree = target.n if degree is None else degree
    if degree < target.n:
        raise DistributionError(f"proposal over {degree} outcomes cannot cover {target.n}")
    return min(1.0, 1.0 / (degree * target.pi_max))


def kl_upper_bound(kappa: float, a: float, steps: int) -> float:
    """Upper bound on KL(pi_i, pi) after ``steps`` transitions."""
    if kappa < 0:
        raise ValueError(f"kappa must be non-negative, got {kappa}")
    if not 0 < a <= 1:
        raise ValueError(f"a must lie in (0, 1], got {a}")
    if steps < 0:
        raise ValueError(f"steps must be non-negative, got {steps}")
    decay = kappa * (1.0 - a) ** steps
    return decay * (1.0 + decay)


def initial_distribution(kind: Union[str, InitKind], dist: DistributionLike) -> np.ndarray:
    """Distribution of the chain's first sample under an initialization strategy.

    Burn-in starts from a random sample, so it shares the random initial distribution.
    """
    target = _as_target(dist)
    if _as_kind(kind) == InitKind.HIGH_WEIGHT:
        pi0 = np.zeros(target.n)
        pi0[target.maxima] = 1.0 / target.t
        return pi0
    return np.full(target.n, 1.0 / target.n)


def kappa_generic(pi0: DistributionLike, dist: DistributionLike) -> float:
    """Sup-norm distance ``max_j |pi0[j] / pi[j] - 1|``."""
    target = _as_target(dist)
    start = np.asarray(pi0.probs if isinstance(pi0, TargetDistribution) else pi0, dtype=float)
    if start.shape != target.probs.shape:
        raise DistributionError(f"shape mismatch: {start.shape} vs {target.probs.shape}")
    return float(np.max(np.abs(start / target.probs - 1.0)))


def kappa_random(dist: DistributionLike) -> float:
    """Closed-form kappa of uniform random initialization."""
    target = _as_target(dist)
    n = target.n
    return max(1.0 - 1.0 / (n * target.pi_max), 1.0 / (n * target.pi_min) - 1.0, 0.0)


def kappa_high_weight(dist: DistributionLike) -> float:
    """Closed-form kappa of high-weight initialization.

    A uniform target has every entry maximal, so the chain starts stationary.
    """
    target = _as_target(dist)
    if target.is_uniform:
        return 0.0
    return max(1.0 / (target.t * target.pi_max) - 1.0, 1.0)


def kappa_for(kind: Union[str, InitKind], dist: DistributionLike) -> float:
    """Closed-form kappa of an initialization strategy."""
    if _as_kind(kind) == InitKind.HIGH_WEIGHT:
        return kappa_high_weight(dist)
    return kappa_random(dist)


def high_weight_better(dist: DistributionLike) -> bool:
    """Whether high-weight initialization has the tighter bound than random initialization.

    Holds when either the maximum is small but the spread exceeds ``n / t``,
    or the maximum is large and the minimum falls below ``1 / (2n)``.
    """
    target = _as_target(dist)
    n, t = target.n, target.t
    pi_max, pi_min = target.pi_max, target.pi_min
    if pi_max < 1.0 / (2 * t):
        return pi_max / pi_min > n / t
    return pi_min < 1.0 / (2 * n)

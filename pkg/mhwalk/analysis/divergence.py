"""Target distributions and KL divergence."""

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from scipy.special import rel_entr

from mhwalk.errors import DistributionError

# Entries within this distance of the maximum count as maximal.
TIE_TOLERANCE = 1e-12
SUM_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class TargetDistribution:
    """Strictly positive probability vector over a finite support."""
    probs: np.ndarray

    def __post_init__(self) -> None:
        probs = np.asarray(self.probs, dtype=np.float64)
        if probs.ndim != 1 or probs.size == 0:
            raise DistributionError("target distribution must be a non-empty vector")
        if not np.all(np.isfinite(probs)) or np.any(probs <= 0):
            raise DistributionError("target probabilities must be positive and finite")
        if abs(probs.sum() - 1.0) > SUM_TOLERANCE:
            raise DistributionError(f"target probabilities sum to {probs.sum()!r}, not 1")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    @classmethod
    def from_weights(cls, weights: Union[np.ndarray, Sequence[float]]) -> "TargetDistribution":
        """Normalize positive unnormalized weights."""
        weights = np.asarray(weights, dtype=np.float64)
        total = weights.sum()
        if not total > 0:
            raise DistributionError("weights must have a positive sum")
        return cls(weights / total)

    @property
    def n(self) -> int:
        return int(self.probs.shape[0])

    @property
    def pi_max(self) -> float:
        return float(self.probs.max())

    @property
    def pi_min(self) -> float:
        return float(self.probs.min())

    @property
    def maxima(self) -> np.ndarray:
        """Indices of the maximal entries."""
        return np.flatnonzero(self.probs >= self.pi_max - TIE_TOLERANCE)

    @property
    def t(self) -> int:
        """Number of maximal entries."""
        return int(self.maxima.shape[0])

    @property
    def ratio(self) -> float:
        return self.pi_max / self.pi_min

    @property
    def is_uniform(self) -> bool:
        return self.t == self.n

    def __len__(self) -> int:
        return self.n


DistributionLike = Union[TargetDistribution, np.ndarray, Sequence[float]]


def _as_vector(dist: DistributionLike) -> np.ndarray:
    if isinstance(dist, TargetDistribution):
        return dist.probs
    return np.asarray(dist, dtype=np.float64)


def kl_divergence(p: DistributionLike, q: DistributionLike) -> float:
    """KL(p || q) in nats; zero entries of ``p`` contribute nothing.

    Raises:
        DistributionError: If the shapes differ or ``q`` is zero where ``p`` is positive
    """
    p_vec = _as_vector(p)
    q_vec = _as_vector(q)
    if p_vec.shape != q_vec.shape:
        raise DistributionError(f"shape mismatch: {p_vec.shape} vs {q_vec.shape}")
    if np.any((q_vec <= 0) & (p_vec > 0)):
        raise DistributionError("support of p is not contained in the support of q")
    return max(float(rel_entr(p_vec, q_vec).sum()), 0.0)


def empirical_distribution(counts: Union[np.ndarray, Sequence[int]]) -> np.ndarray:
    """Relative frequencies of ``counts``."""
    counts = np.asarray(counts, dtype=np.float64)
    total = counts.sum()
    if not total > 0:
        raise DistributionError("empirical distribution needs at least one observation")
    return counts / total


def empirical_kl(counts: Union[np.ndarray, Sequence[int]], target: DistributionLike) -> float:
    """KL divergence of the empirical distribution of ``counts`` from ``target``."""
    return kl_divergence(empirical_distribution(counts), target)

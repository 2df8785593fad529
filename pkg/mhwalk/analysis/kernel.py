"""Exact transition kernel of the uniform-proposal M-H chain."""

import numpy as np

from mhwalk.analysis.divergence import DistributionLike, TargetDistribution
from mhwalk.errors import DistributionError


def mh_kernel(dist: DistributionLike) -> np.ndarray:
    """Row-stochastic matrix ``P[i, j] = min(1, pi[j] / pi[i]) / n`` off the diagonal.

    The diagonal holds the mass of rejected and self proposals.
    """
    probs = dist.probs if isinstance(dist, TargetDistribution) else np.asarray(dist, float)
    if probs.ndim != 1 or np.any(probs <= 0):
        raise DistributionError("kernel needs a strictly positive probability vector")
    n = probs.shape[0]
    kernel = np.minimum(1.0, probs[np.newaxis, :] / probs[:, np.newaxis]) / n
    np.fill_diagonal(kernel, 0.0)
    np.fill_diagonal(kernel, 1.0 - kernel.sum(axis=1))
    return kernel


def chain_marginals(kernel: np.ndarray, pi0: np.ndarray, steps: int) -> np.ndarray:
    """Distributions of the chain after 0..steps transitions, one row each."""
    pi0 = np.asarray(pi0, dtype=np.float64)
    if kernel.shape != (pi0.shape[0], pi0.shape[0]):
        raise DistributionError(f"kernel {kernel.shape} does not match pi0 {pi0.shape}")
    marginals = np.empty((steps + 1, pi0.shape[0]))
    marginals[0] = pi0
    for i in range(1, steps + 1):
        marginals[i] = marginals[i - 1] @ kernel
    return marginals

"""Edge samplers: Metropolis-Hastings plus alias, direct and rejection baselines."""

from mhwalk.samplers.random_stream import RandomStream
from mhwalk.samplers.alias import AliasTable, alias_build, alias_sample
from mhwalk.samplers.direct import direct_sample
from mhwalk.samplers.rejection import rejection_sample
from mhwalk.samplers.mh import (
    UNINITIALIZED,
    InitKind,
    InitStrategy,
    LastSample,
    MhSampler,
    mh_init,
    mh_sample,
    mh_step,
    mh_transition,
)

__all__ = [
    "RandomStream",
    "AliasTable",
    "alias_build",
    "alias_sample",
    "direct_sample",
    "rejection_sample",
    "UNINITIALIZED",
    "InitKind",
    "InitStrategy",
    "LastSample",
    "MhSampler",
    "mh_init",
    "mh_sample",
    "mh_step",
    "mh_transition",
]

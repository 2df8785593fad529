"""Walker state: the (position, affixture) pair selecting one transition distribution."""

from typing import NamedTuple

#: Affixture of first-order states (deepwalk)
NONE = -1
#: Affixture of a second-order walker that has not taken its first step yet
BOOTSTRAP = -2


class WalkerState(NamedTuple):
    """Current node plus the model-specific datum that disambiguates states there.

    For node2vec-style models the affixture is the index of the previous node
    within the neighbor slice of ``position``; for metapath2vec it indexes
    the metapath cycle entry naming the required next node type.
    """

    position: int
    affixture: int = NONE

    @property
    def is_bootstrap(self) -> bool:
        """Second-order walker without a previous node."""
        return self.affixture == BOOTSTRAP

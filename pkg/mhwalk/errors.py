"""Exception hierarchy shared by all mhwalk subpackages."""

from pathlib import Path
from typing import Optional, Union


class MhWalkError(Exception):
    """Base class for every error raised by mhwalk."""


class GraphFormatError(MhWalkError, ValueError):
    """A graph text file contains a line that cannot be parsed."""

    def __init__(
        self,
        message: str,
        path: Optional[Union[str, Path]] = None,
        line_number: Optional[int] = None,
    ) -> None:
        self.path = str(path) if path is not None else None
        self.line_number = line_number
        location = ""
        if self.path is not None:
            location = self.path
            if line_number is not None:
                location += f":{line_number}"
            location += ": "
        elif line_number is not None:
            location = f"line {line_number}: "
        super().__init__(f"{location}{message}")


class GraphValidationError(MhWalkError, ValueError):
    """Graph contents violate a structural invariant."""


class ModelConfigError(MhWalkError, ValueError):
    """Walk model parameters are invalid or the graph cannot host the model."""


class ModelContractError(MhWalkError, RuntimeError):
    """A walker state was used with a model it does not belong to."""


class SamplerDeadEnd(MhWalkError):
    """No candidate edge with positive dynamic weight exists for a state."""

    def __init__(self, position: int, affixture: int) -> None:
        self.position = position
        self.affixture = affixture
        super().__init__(
            f"No positive-weight edge from node {position} (affixture {affixture})"
        )


class SamplerError(MhWalkError, ValueError):
    """A sampler was given an unusable weight vector or envelope."""


class RejectionExhausted(SamplerError):
    """Rejection sampling used up its trial budget without an acceptance."""

    def __init__(self, trials: int) -> None:
        self.trials = trials
        super().__init__(f"no proposal accepted after {trials} trials")


class SimulationConfigError(MhWalkError, ValueError):
    """Simulation parameters describe an infeasible target family."""


class ResourceError(MhWalkError, MemoryError):
    """A requested allocation exceeds what can be addressed."""


class CorpusIOError(MhWalkError, OSError):
    """Reading or writing a run artifact failed."""

    def __init__(self, message: str, path: Union[str, Path]) -> None:
        self.path = str(path)
        super().__init__(f"{message}: {self.path}")


class DistributionError(MhWalkError, ValueError):
    """A probability vector is invalid or a divergence is undefined on it."""

"""Environment-derived defaults for walk runs."""

import logging
import os
from dataclasses import asdict, dataclass
from typing import Any, Dict, Mapping, Optional

logger = logging.getLogger(__name__)

THREADS_VARIABLE = "MHWALK_THREADS"
SEED_VARIABLE = "MHWALK_SEED"


@dataclass
class EnvironmentSettings:
    """Defaults a run falls back to when the command line leaves them out."""
    threads: int = 1
    seed: int = 0


class SettingsManager:
    """Read run defaults from the process environment."""

    def __init__(self, environ: Optional[Mapping[str, str]] = None):
        """Initialize settings manager.

        Args:
            environ: Variables to read (defaults to ``os.environ``)
        """
        self.environ = os.environ if environ is None else environ
        self.settings = self._load_settings()

    def _load_settings(self) -> EnvironmentSettings:
        """Load settings from the environment, keeping defaults for bad values."""
        defaults = EnvironmentSettings()
        threads = self._read_int(THREADS_VARIABLE, defaults.threads, minimum=1)
        seed = self._read_int(SEED_VARIABLE, defaults.seed, minimum=0)
        return EnvironmentSettings(threads=threads, seed=seed)

    def _read_int(self, name: str, default: int, minimum: int) -> int:
        raw = self.environ.get(name)
        if raw is None or raw.strip() == "":
            return default
        try:
            value = int(raw)
        except ValueError:
            logger.warning(f"Ignoring {name}={raw!r}: not an integer, using {default}")
            return default
        if value < minimum:
            logger.warning(f"Ignoring {name}={value}: must be >= {minimum}, using {default}")
            return default
        return value

    @property
    def threads(self) -> int:
        return self.settings.threads

    @property
    def seed(self) -> int:
        return self.settings.seed

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return asdict(self.settings)


# Global settings instance
_settings_manager: Optional[SettingsManager] = None


def get_settings() -> SettingsManager:
    """Get global settings manager instance.

    Returns:
        Settings manager
    """
    global _settings_manager
    if _settings_manager is None:
        _settings_manager = SettingsManager()
    return _settings_manager


def reset_settings() -> None:
    """Drop the cached global instance so the next call re-reads the environment."""
    global _settings_manager
    _settings_manager = None

"""Configuration module for run defaults."""

from mhwalk.config.settings import (
    EnvironmentSettings,
    SettingsManager,
    get_settings,
    reset_settings,
)

__all__ = [
    'EnvironmentSettings',
    'SettingsManager',
    'get_settings',
    'reset_settings',
]

"""mhwalk - random-walk corpus generation with Metropolis-Hastings edge sampling."""

__version__ = "0.1.0"

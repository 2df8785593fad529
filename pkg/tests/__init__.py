"""Test suite for mhwalk."""

"""Exception hierarchy for normtune."""

from __future__ import annotations


class TuneError(Exception):
    """Base class for all normtune errors."""


class ConfigError(TuneError):
    """A configuration value is out of range or inconsistent."""


class DataError(TuneError):
    """A corpus or manifest file is missing, malformed, or unusable."""

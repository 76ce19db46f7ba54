"""Exception hierarchy shared across the toolkit.

Every error raised on purpose by this package derives from NormkitError so
callers can catch one base type at the CLI boundary.
"""

from __future__ import annotations


class NormkitError(Exception):
    """Base class for all errors raised deliberately by this package."""


class ConfigError(NormkitError):
    """A configuration value is out of range or internally inconsistent."""


class InvalidRange(ConfigError):
    """A numeric range (years, counts, magnitudes) is empty or inverted."""


class InventoryError(NormkitError):
    """A format inventory file is malformed or violates its counting rules."""


class UnknownToken(InventoryError):
    """A template contains a placeholder token that is not defined."""


class DuplicateSlot(InventoryError):
    """A template uses the same semantic slot more than once."""


class UnsupportedSlot(NormkitError):
    """A template requires a slot the payload cannot fill (or pins a sign
    that contradicts the payload)."""


class GazetteerError(NormkitError):
    """A gazetteer source is unusable (missing columns, no valid rows)."""


class LookupFailure(GazetteerError):
    """A remote street-registry lookup failed after retries."""


class Unparseable(NormkitError):
    """An input string could not be normalized to a canonical form.

    ``partial`` optionally carries which slots were recovered before the
    parse was abandoned, for diagnostics.
    """

    def __init__(self, message: str, partial: dict | None = None):
        super().__init__(message)
        self.partial = dict(partial) if partial else {}


class AmbiguousDate(Unparseable):
    """The input admits two or more conflicting date readings."""


class UnknownTask(Unparseable):
    """The input could not be routed to any supported task."""


class LengthMismatch(NormkitError):
    """Paired sequences that must be equal length are not."""


class ProtocolViolation(NormkitError):
    """An external backend wrote a line that is not a valid response."""

    def __init__(self, message: str, line: str | None = None):
        super().__init__(message)
        self.line = line


class BackendCrash(NormkitError):
    """An external backend exited before answering every request.

    ``report`` carries the partial evaluation report accumulated so far,
    if the caller got far enough to build one.
    """

    def __init__(self, message: str, report=None, returncode: int | None = None):
        super().__init__(message)
        self.report = report
        self.returncode = returncode

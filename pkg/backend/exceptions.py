"""Errors raised by the partition toolkit.

The CLI maps every subclass of PartitionToolkitError to exit status 2.
"""


class PartitionToolkitError(Exception):
    """Base class for all toolkit errors."""


class CapacityError(PartitionToolkitError):
    """A count table was asked for an index beyond its hard limit."""


class InvalidProfileError(PartitionToolkitError):
    """Constraint profile overlaps itself or names a colour outside 1..k."""


class InvalidPartError(PartitionToolkitError):
    """A coloured part has size < 1 or a colour outside 1..k, or text failed to parse."""


class PreconditionError(PartitionToolkitError):
    """An operation was called outside its domain (bad k, n, weight or forbidden parts)."""


class ScaleLimitError(PartitionToolkitError):
    """An audit was requested beyond the configured oracle scale."""


class CacheValidationError(PartitionToolkitError):
    """A cache file parsed but its leading counts disagree with recomputation."""

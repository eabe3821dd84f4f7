"""Exception types shared across the toolkit."""


class ReviewDiffusionError(Exception):
    """Base class for all errors raised by this package."""


class RejectedEventError(ReviewDiffusionError):
    """A record could not be turned into a network edge.

    Carries the offending event id so rejected records can be traced
    back to the raw dump.
    """

    def __init__(self, event_id: str, reason: str):
        super().__init__(f"event {event_id!r} rejected: {reason}")
        self.event_id = event_id
        self.reason = reason


class UndefinedRatioError(ReviewDiffusionError):
    """The linked-review ratio has an empty denominator."""


class CredentialError(ReviewDiffusionError):
    """The API rejected our credentials (or none were configured)."""


class PartialCrawlError(ReviewDiffusionError):
    """The crawl aborted midway; lists the repositories finished so far."""

    def __init__(self, message: str, completed_repos: list[str]):
        super().__init__(message)
        self.completed_repos = completed_repos


class MissingSnapshotError(ReviewDiffusionError):
    """No component snapshot exists on or before the requested date."""


class SnapshotConsistencyError(ReviewDiffusionError):
    """A component was requested that the snapshot does not contain."""


class EmptyDistributionError(ReviewDiffusionError):
    """An empirical distribution was requested for zero values."""


class NothingToPlotError(ReviewDiffusionError):
    """A renderer received no drawable data."""


class ConfigurationError(ReviewDiffusionError):
    """A run configuration value is missing or invalid."""

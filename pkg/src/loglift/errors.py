"""Exception types raised across the loglift pipeline."""


class LogliftError(Exception):
    """Base class for all loglift errors."""


class NotARepository(LogliftError):
    """The given path is not inside a git repository."""


class EmptyRepository(LogliftError):
    """The repository has no commits reachable from HEAD."""


class UnparsableFile(LogliftError):
    """A Java file could not be syntactically indexed."""

    def __init__(self, path: str, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


class NonConsecutiveSequence(LogliftError):
    """Change events were not numbered 0..N-1 in order."""


class EmptyModel(LogliftError):
    """No DOI values available to partition."""


class OutOfRange(LogliftError):
    """A DOI value fell outside the partitioned range."""


class EmptyHistogram(LogliftError):
    """A level histogram with zero total cannot be compared."""


class StaleSpan(LogliftError):
    """A rewrite target no longer matches the analyzed source."""

    def __init__(self, path: str, line: int, expected: str, found: str):
        super().__init__(
            f"{path}:{line}: expected token {expected!r}, found {found!r}"
        )
        self.path = path
        self.line = line
        self.expected = expected
        self.found = found

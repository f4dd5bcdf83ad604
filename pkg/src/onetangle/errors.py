"""Exception types shared across the package.

The CLI maps these onto its exit-code contract (config error -> 2,
numerical-invariant violation -> 3, resource limit -> 4).
"""


class ConfigError(Exception):
    """A run configuration failed schema validation or could not be read."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class ResourceLimitError(RuntimeError):
    """A requested computation exceeds a hard size limit."""


class InvariantViolationError(RuntimeError):
    """A numerical invariant that must hold by construction was violated."""


class NoCrossingError(RuntimeError):
    """A curve never crosses the level required by the requested statistic."""

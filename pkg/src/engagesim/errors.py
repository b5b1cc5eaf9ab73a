"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: ConfigError -> 2, DataError -> 3,
anything else raised here -> 4.
"""


class EngageSimError(Exception):
    """Base class for all package errors."""


class ConfigError(EngageSimError):
    """Invalid or contradictory run configuration."""


class DataError(EngageSimError):
    """Malformed input data (edge lists, opinion files, lexicons, ...)."""


class GenerationError(EngageSimError):
    """Synthetic network construction could not realize its constraints."""


class ScoringError(EngageSimError):
    """A sentiment scorer misbehaved (protocol violation, out-of-range value)."""


class TrainingError(EngageSimError):
    """Training aborted: numeric blow-up or a failing rollout."""


class RansacError(EngageSimError):
    """Robust line fit could not reach the required consensus."""

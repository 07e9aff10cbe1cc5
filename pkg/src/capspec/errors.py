"""Exception types shared across the package.

The CLI maps each class to a fixed exit code, so callers that need to tell
failure modes apart should catch these rather than ``ValueError``.
"""


class CapspecError(Exception):
    exit_code = 1


class DomainError(CapspecError, ValueError):
    """Invalid input: nonpositive parameter, dimension mismatch, bad literal."""

    exit_code = 2


class DegenerateSpectrumError(CapspecError):
    """Two Reeb orbits share an action where a unique orbit is required."""

    exit_code = 3


class UnsupportedQueryError(CapspecError):
    exit_code = 4

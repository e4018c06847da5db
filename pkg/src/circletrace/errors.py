"""Exception types shared across the package.

The CLI maps ParameterError to exit code 2 and ResourceLimitError to exit
code 3; everything else is a genuine bug and propagates.
"""


class ParameterError(ValueError):
    """Invalid user-supplied parameters or malformed input data."""


class BasisMismatchError(ParameterError):
    """Operators combined over incompatible basis index maps."""


class ResourceLimitError(RuntimeError):
    """Requested computation exceeds the configured size caps."""


class SpectralError(RuntimeError):
    """A matrix decomposition failed to converge."""

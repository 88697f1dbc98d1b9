"""Exception types raised by the library."""


class CavityError(Exception):
    """Base class for library errors."""


class MalformedStateError(CavityError):
    """The matrix is not a valid covariance matrix (or a two-mode state is inconsistent)."""


class UnsupportedStateError(CavityError):
    """The state is valid but outside what the routine handles (e.g. q-p correlations)."""


class ConvergenceError(CavityError):
    """A truncated sum failed its convergence check."""

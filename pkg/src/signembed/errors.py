"""Exception taxonomy shared by the library and the CLI.

The CLI maps these onto exit codes: UsageError -> 2, ResourceGuardError -> 3,
NumericalError -> 1.
"""


class UsageError(ValueError):
    """Invalid arguments, dimensions, or configuration values."""


class ResourceGuardError(RuntimeError):
    """A size guard was exceeded (use the sampled variant or shrink the problem)."""


class NumericalError(RuntimeError):
    """An iterative numerical routine failed to converge."""

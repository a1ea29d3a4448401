"""Exception types shared across the package.

The CLI maps :class:`InstanceError` to exit code 1 and
:class:`InvariantError` to exit code 2.
"""


class InstanceError(ValueError):
    """Bad input: malformed instance, violated geometric incidence, etc."""


class InvariantError(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""

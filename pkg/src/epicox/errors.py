"""Exception types shared across the package.

The split mirrors the CLI exit codes: bad input, an internal guarantee that
broke, a budget that ran out, and concrete evidence against a property the
construction is supposed to enforce.
"""


class PreconditionError(ValueError):
    """An input violates a documented precondition."""


class InternalInconsistencyError(RuntimeError):
    """Something the implementation itself guarantees failed to hold."""


class EnumerationCapExceeded(RuntimeError):
    """An enumeration outgrew its element budget."""


class FalsificationError(RuntimeError):
    """A property the construction guarantees failed on a concrete instance."""

"""Exception types shared across the package."""


class InternalConsistencyError(RuntimeError):
    """A relation that must hold by construction failed.

    This signals a bug in the implementation, never bad user input.
    """

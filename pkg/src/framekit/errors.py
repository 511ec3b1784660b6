"""Exception hierarchy for framekit."""


class FramekitError(Exception):
    """Base class for all framekit errors."""


class UsageError(FramekitError):
    """Caller violated a precondition (bad index, unknown name, bad value)."""


class InvariantViolationError(FramekitError):
    """A structural invariant failed (e.g. a non-orthogonal rotation matrix)."""


class ScenarioError(UsageError):
    """A scenario document is malformed or references unknown catalog ids."""

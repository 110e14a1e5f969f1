"""Exception types shared across the package."""


class MawatamError(Exception):
    """Base class for all domain errors."""


class OccupiedPositionError(MawatamError):
    """Tile placement attempted on a seed cell or an already-tiled cell."""


class InsufficientBondsError(MawatamError):
    """Tile placement attempted with fewer than two matching non-null glues."""


class MismatchError(MawatamError):
    """Strict mode: placement would abut an unequal pair of non-null glues."""


class StepBudgetExceededError(MawatamError):
    """run_to_terminal exceeded its attachment budget."""


class FormatError(MawatamError):
    """A text format failed to parse."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DuplicateTileNameError(FormatError):
    """Two tiles in one tile set share a name."""


class NetlistError(MawatamError):
    """Netlist-level error (undefined signal, cycle, arity violation)."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class LengthMismatchError(MawatamError):
    """Input bit vector length does not match the number of input sites."""


class OutputNotReachedError(MawatamError):
    """Terminal assembly carries no glue at the output edge."""


class OverlapError(MawatamError):
    """Two maze fragments claim the same cell."""


class UnroutableError(MawatamError):
    """The router could not realize a wire without collisions."""


class ValidationFailureError(MawatamError):
    """A gadget failed exhaustive validation."""

    def __init__(self, message, assignment=None, position=None):
        super().__init__(message)
        self.assignment = assignment
        self.position = position


class NondeterminismError(MawatamError):
    """An assembly admitted more than one tile at a position."""


class RectNotFullyTiledError(MawatamError):
    """Rectangle identity requested on a region with holes."""

"""Exception types shared across the package."""


class PaintShopError(Exception):
    """Base class for all package-specific errors."""


class InvalidActionError(PaintShopError):
    """An action trace contains an action that is not legal at its position."""

    def __init__(self, index, action=None):
        self.index = index
        self.action = action
        detail = f" ({action})" if action is not None else ""
        super().__init__(f"invalid action at index {index}{detail}")


class NotTerminalError(PaintShopError):
    """A replayed trace ends with cars still in the buffer or upstream."""


class EmptyBufferError(PaintShopError):
    """Retrieval planning was asked for an entirely empty buffer."""


class AllMaskedError(PaintShopError):
    """A probability distribution was requested under a mask that admits nothing."""


class DimensionMismatchError(PaintShopError):
    """A policy was applied to an instance with different dimensions."""


class NonFiniteLossError(PaintShopError):
    """A policy update produced a non-finite loss or gradient."""


class UnsupportedInitialBufferError(PaintShopError):
    """The model exporter only covers instances that start with an empty buffer."""


class BestIsZeroError(PaintShopError):
    """Relative deviation is undefined when the best solution has zero changes."""


class LimitExceededError(PaintShopError):
    """A search hit its node or time limit before finishing."""

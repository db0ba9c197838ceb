"""Exception types shared across the simulator, kernels and CLI."""


class SimError(Exception):
    """Base class for all simulator-raised errors."""


class InvalidDimensionError(SimError, ValueError):
    """Raised when a size is not a power of two or shapes do not match."""


class DecompositionError(InvalidDimensionError):
    """Raised when rows/cols cannot be split evenly across cores."""


class AllocationError(SimError):
    """Raised when an SRAM arena cannot satisfy an allocation."""


class AlignmentError(SimError):
    """Raised when a 128-bit access is requested on an unaligned span."""


class ProtocolViolation(SimError):
    """Misuse of the CB or register protocol.

    ``kind`` is a stable machine-readable tag (e.g. ``push_without_reserve``)
    so tests and callers can match on the violation without string parsing.
    """

    def __init__(self, kind: str, message: str):
        super().__init__(f"{kind}: {message}")
        self.kind = kind


class DeadlockError(SimError):
    """All live agents are blocked; carries each agent's wait target."""

    def __init__(self, waits):
        self.waits = dict(waits)
        lines = ", ".join(f"{agent} waiting on {why}" for agent, why in self.waits.items())
        super().__init__(f"deadlock: {lines}")

"""SRAM and DRAM arenas with named, budget-checked allocations.

Offsets come from a monotone bump pointer padded to 16 bytes, so every
allocation is 128-bit aligned at element 0 and allocations never overlap.
Freeing returns bytes to the live budget without recycling offsets; the
budget models concurrent residency, which is all the capacity ceiling
needs.
"""

from __future__ import annotations

import numpy as np

from ..errors import AllocationError

SRAM_CAPACITY_BYTES = 1_331_200  # 1.3 MB of local SRAM per core
ALIGN = 16


class Allocation:
    def __init__(self, arena, name: str, count: int, dtype, byte_offset: int):
        self.arena = arena
        self.name = name
        self.dtype = np.dtype(dtype)
        self.byte_offset = byte_offset
        self.data = np.zeros(count, self.dtype)
        self.freed = False

    @property
    def kind(self) -> str:
        return self.arena.kind

    @property
    def nbytes(self) -> int:
        return self.data.nbytes

    def span(self, start: int = 0, length: int | None = None) -> "Span":
        if length is None:
            length = self.data.size - start
        return Span(self, start, length)

    def __repr__(self):
        return f"Allocation({self.name!r}, {self.data.size}x{self.dtype}, {self.kind})"


class Span:
    """A contiguous element range within one allocation."""

    __slots__ = ("alloc", "start", "length")

    def __init__(self, alloc: Allocation, start: int, length: int):
        if start < 0 or start + length > alloc.data.size:
            raise AllocationError(
                f"span [{start}, {start + length}) outside {alloc.name} of size {alloc.data.size}"
            )
        self.alloc = alloc
        self.start = start
        self.length = length

    @property
    def kind(self) -> str:
        return self.alloc.kind

    @property
    def view(self) -> np.ndarray:
        return self.alloc.data[self.start : self.start + self.length]

    def byte_start(self) -> int:
        return self.alloc.byte_offset + self.start * self.alloc.dtype.itemsize


class SramArena:
    """Fixed-capacity arena; allocation beyond capacity is a hard error."""

    kind = "sram"

    def __init__(self, capacity: int = SRAM_CAPACITY_BYTES, name: str = "sram"):
        self.capacity = capacity
        self.name = name
        self.live_bytes = 0
        self.peak_bytes = 0
        self._bump = 0
        self.allocations: dict[str, Allocation] = {}

    def alloc(self, name: str, count: int, dtype=np.float32) -> Allocation:
        if name in self.allocations:
            raise AllocationError(f"duplicate allocation name {name!r} in {self.name}")
        nbytes = int(count) * np.dtype(dtype).itemsize
        padded = -(-nbytes // ALIGN) * ALIGN
        if self.live_bytes + padded > self.capacity:
            raise AllocationError(
                f"{self.name}: allocating {name!r} ({padded} B) exceeds capacity "
                f"{self.capacity} B (live {self.live_bytes} B)"
            )
        allocation = Allocation(self, name, count, dtype, self._bump)
        self._bump += padded
        self.live_bytes += padded
        self.peak_bytes = max(self.peak_bytes, self.live_bytes)
        self.allocations[name] = allocation
        return allocation

    def free(self, allocation: Allocation) -> None:
        if allocation.freed:
            raise AllocationError(f"double free of {allocation.name!r}")
        allocation.freed = True
        padded = -(-allocation.nbytes // ALIGN) * ALIGN
        self.live_bytes -= padded
        del self.allocations[allocation.name]


class DramArena(SramArena):
    """Unlimited external memory; accesses are ledgered separately."""

    kind = "dram"

    def __init__(self, name: str = "dram"):
        super().__init__(capacity=1 << 62, name=name)

"""Multi-core grid with a flat NoC transfer model.

Cores are isolated: the only way data crosses core boundaries is through
``noc_exchange``, which delivers blocks between arenas and charges one
32-bit word per element to the source core's ledger. All core pairs are
equidistant; self-transfers are counted like any other for uniform
accounting.
"""

from __future__ import annotations

import numpy as np

from .arena import DramArena, Span, SRAM_CAPACITY_BYTES
from .core import TensixCore
from .ledger import CostLedger


def _as_view(side) -> np.ndarray:
    return side.view if isinstance(side, Span) else side


class CoreGrid:
    def __init__(self, num_cores: int, sram_capacity: int = SRAM_CAPACITY_BYTES,
                 weights=None, record_trace: bool = True):
        self.dram = DramArena()
        self.weights = weights
        self.cores = [
            TensixCore(f"core{i}", sram_capacity, weights, dram=self.dram,
                       record_trace=record_trace)
            for i in range(num_cores)
        ]

    @property
    def num_cores(self) -> int:
        return len(self.cores)

    def noc_exchange(self, transfers) -> None:
        """Deliver (src_core, dst_core, src_block, dst_block) transfers.

        Blocks are spans or array views of equal shape; the destination
        must already be reserved (allocated) on the destination core, so
        capacity violations surface as allocation errors before any
        transfer runs.
        """
        for src_idx, dst_idx, src, dst in transfers:
            src_view, dst_view = _as_view(src), _as_view(dst)
            if src_view.size != dst_view.size:
                raise ValueError(
                    f"noc transfer size mismatch: {src_view.size} vs {dst_view.size}"
                )
            dst_view[...] = src_view.reshape(dst_view.shape)
            src_core = self.cores[src_idx]
            src_core.ledger.count_noc_words(src_view.size)
            src_core.trace_event("noc", dst=dst_idx, n=int(src_view.size))

    def aggregate_counters(self) -> dict:
        return CostLedger.sum_counters([core.ledger for core in self.cores])

"""One simulated Tensix-style core.

Aggregates an SRAM arena, circular buffers, the register file and a cost
ledger, and provides the data-mover primitives. Movers operate on spans in
bulk: a gather loads from arbitrary indices and stores into a contiguous
destination, a scatter does the opposite, and a plain copy is contiguous
on both sides. Each side of a copy is ledgered independently, so a
DRAM-to-SRAM transfer counts one DRAM access and one SRAM access per
element (or per four elements at 128-bit width on the SRAM side).
"""

from __future__ import annotations

import numpy as np

from ..errors import AlignmentError
from .arena import DramArena, Span, SramArena, SRAM_CAPACITY_BYTES
from .cb import CircularBuffer, PAGE_ELEMS
from .ledger import CostLedger
from .registers import RegisterFile
from .scheduler import Semaphore


def _check_128(span: Span) -> None:
    if span.length % 4 != 0:
        raise AlignmentError(f"128-bit span length {span.length} is not a multiple of 4")
    if span.byte_start() % 16 != 0:
        raise AlignmentError(f"128-bit span at byte offset {span.byte_start()} is unaligned")


class TensixCore:
    def __init__(self, name: str = "core0", sram_capacity: int = SRAM_CAPACITY_BYTES,
                 weights=None, dram: DramArena | None = None, record_trace: bool = True):
        self.name = name
        self.arena = SramArena(sram_capacity, name=f"{name}.sram")
        self.dram = dram if dram is not None else DramArena()
        self.ledger = CostLedger(weights)
        self.regs = RegisterFile(self)
        self.cbs: dict[str, CircularBuffer] = {}
        self.semaphores: dict[str, Semaphore] = {}
        self.current_agent: str | None = None
        self.op_count = 0
        self.record_trace = record_trace
        self.trace: list[tuple] = []
        self.trace_len = 0

    def note_op(self) -> None:
        self.op_count += 1

    def trace_event(self, op: str, **info) -> None:
        self.trace_len += 1
        if self.record_trace:
            self.trace.append((self.current_agent, op, info))

    # -- construction helpers -------------------------------------------------

    def add_cb(self, name: str, num_pages: int, page_size: int = PAGE_ELEMS,
               producer: str | None = None, consumer: str | None = None) -> CircularBuffer:
        cb = CircularBuffer(self, name, num_pages, page_size, producer, consumer)
        self.cbs[name] = cb
        return cb

    def cb(self, name: str) -> CircularBuffer:
        return self.cbs[name]

    def semaphore(self, name: str) -> Semaphore:
        if name not in self.semaphores:
            self.semaphores[name] = Semaphore(self, name)
        return self.semaphores[name]

    # -- mover primitives ------------------------------------------------------

    def _side_access(self, span: Span, engine: str, width: int, issuer=None) -> None:
        if width == 128 and span.kind != "dram":
            _check_128(span)
        self.ledger.count_access(
            span.kind, engine, width, span.length,
            byte_start=span.byte_start(), issuer=issuer,
        )

    def mover_copy(self, src: Span, dst: Span, engine: str, width: int = 32,
                   issuer=None, step=None) -> None:
        """Contiguous copy; the requested width applies to both sides."""
        if src.length != dst.length:
            raise AlignmentError(f"copy length mismatch: {src.length} vs {dst.length}")
        self._side_access(src, engine, width, issuer)
        self._side_access(dst, engine, width, issuer)
        dst.view[:] = src.view
        self.trace_event("copy", step=step, src=src.alloc.name, dst=dst.alloc.name,
                         n=src.length, width=width)
        self.note_op()

    def mover_gather(self, src_alloc, indices: np.ndarray, dst: Span, engine: str,
                     store_width: int = 32, issuer=None, step=None) -> None:
        """Scattered 32-bit loads, contiguous stores at ``store_width``."""
        if len(indices) != dst.length:
            raise AlignmentError(f"gather length mismatch: {len(indices)} vs {dst.length}")
        self.ledger.count_access(src_alloc.kind, engine, 32, len(indices), issuer=issuer)
        self._side_access(dst, engine, store_width, issuer)
        dst.view[:] = src_alloc.data[indices]
        self.trace_event("gather", step=step, src=src_alloc.name, dst=dst.alloc.name,
                         n=int(len(indices)), width=store_width)
        self.note_op()

    def mover_scatter(self, src: Span, dst_alloc, indices: np.ndarray, engine: str,
                      load_width: int = 32, issuer=None, step=None) -> None:
        """Contiguous loads at ``load_width``, scattered 32-bit stores."""
        if len(indices) != src.length:
            raise AlignmentError(f"scatter length mismatch: {src.length} vs {len(indices)}")
        self._side_access(src, engine, load_width, issuer)
        self.ledger.count_access(dst_alloc.kind, engine, 32, len(indices), issuer=issuer)
        dst_alloc.data[indices] = src.view
        self.trace_event("scatter", step=step, src=src.alloc.name, dst=dst_alloc.name,
                         n=int(len(indices)), width=load_width)
        self.note_op()

    # -- compute composite -----------------------------------------------------

    def maths_sfpu_op(self, op: str, cb_in_1: str, cb_in_2: str, cb_tgt: str,
                      pop_in1: bool = False, pop_in2: bool = False):
        """One boilerplate-wrapped vector-unit operation.

        Waits on the flagged inputs, acquires dst, unpacks both input pages
        into segments 0 and 1, applies the op (result in segment 0),
        commits, pops the flagged inputs, then reserves a target page,
        packs segment 0 into it and pushes. Exactly four tile operations:
        two copies, one op, one pack.
        """
        in1, in2, tgt = self.cb(cb_in_1), self.cb(cb_in_2), self.cb(cb_tgt)
        if pop_in1:
            yield from in1.wait()
        if pop_in2:
            yield from in2.wait()
        yield from self.regs.acquire()
        self.regs.copy_tile(in1.front(), 0)
        self.regs.copy_tile(in2.front(), 1)
        self.regs.binary_op(op, 0, 1)
        self.regs.commit()
        if pop_in1:
            in1.pop()
        if pop_in2:
            in2.pop()
        page = yield from tgt.reserve()
        self.regs.wait()
        self.regs.pack_tile(0, page)
        self.regs.release()
        tgt.push(page)

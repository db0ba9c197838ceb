"""Compute-engine register files and the dst ownership protocol.

src slots hold one tile each (1024 FP32). The dst register has 16 segments
under a strict ownership cycle: none -> math (acquire), math -> pack
(commit then wait), pack -> none (release). Tile operations validate the
owner at every step and raise a named protocol violation on misuse; the
simulator never keeps running past a violation.
"""

from __future__ import annotations

import numpy as np

from ..errors import ProtocolViolation
from .cb import PAGE_ELEMS, RESERVED

DST_SEGMENTS = 16

OWNER_NONE, OWNER_MATH, OWNER_PACK = "none", "math", "pack"

ADD, SUB, MUL, DIV = "ADD", "SUB", "MUL", "DIV"

_BINARY_OPS = {
    ADD: np.add,
    SUB: np.subtract,
    MUL: np.multiply,
    DIV: np.divide,
}


class RegisterFile:
    def __init__(self, core):
        self.core = core
        self.src_a = None
        self.src_b = None
        self.dst = [None] * DST_SEGMENTS
        self.dst_owner = OWNER_NONE
        self.committed = False

    def acquire(self):
        """MATH takes ownership of dst; blocks while another holder exists."""
        while self.dst_owner != OWNER_NONE:
            yield f"regs: acquire (dst owned by {self.dst_owner})"
        self.dst_owner = OWNER_MATH
        self.committed = False
        self.core.note_op()

    def commit(self) -> None:
        if self.dst_owner != OWNER_MATH or self.committed:
            raise ProtocolViolation(
                "commit_out_of_order",
                f"regs: commit with owner={self.dst_owner}, committed={self.committed}",
            )
        self.committed = True
        self.core.note_op()

    def wait(self) -> None:
        if self.dst_owner != OWNER_MATH or not self.committed:
            raise ProtocolViolation(
                "wait_before_commit",
                f"regs: wait with owner={self.dst_owner}, committed={self.committed}",
            )
        self.dst_owner = OWNER_PACK
        self.core.note_op()

    def release(self) -> None:
        if self.dst_owner != OWNER_PACK:
            raise ProtocolViolation(
                "release_out_of_order", f"regs: release with owner={self.dst_owner}"
            )
        self.dst_owner = OWNER_NONE
        self.committed = False
        self.core.note_op()

    def _check_segment(self, seg: int) -> None:
        if not 0 <= seg < DST_SEGMENTS:
            raise ProtocolViolation("segment_range", f"dst segment {seg} outside [0, {DST_SEGMENTS})")

    def copy_tile(self, page, seg: int) -> None:
        """Unpack one CB page into a dst segment (math must own dst)."""
        self._check_segment(seg)
        if self.dst_owner != OWNER_MATH or self.committed:
            raise ProtocolViolation(
                "copy_without_acquire",
                f"regs: copy_tile with owner={self.dst_owner}, committed={self.committed}",
            )
        if page.length > PAGE_ELEMS:
            raise ProtocolViolation(
                "tile_too_large", f"page of {page.length} elements exceeds the {PAGE_ELEMS}-lane tile"
            )
        staged = page.data.copy()
        if seg % 2 == 0:
            self.src_a = staged
        else:
            self.src_b = staged
        self.dst[seg] = staged
        self.core.ledger.count_tile_ops()
        self.core.note_op()

    def binary_op(self, op: str, seg_a: int, seg_b: int) -> None:
        """Elementwise FP32 op across the lanes; result overwrites seg_a."""
        self._check_segment(seg_a)
        self._check_segment(seg_b)
        if self.dst_owner != OWNER_MATH or self.committed:
            raise ProtocolViolation(
                "op_without_acquire",
                f"regs: {op} with owner={self.dst_owner}, committed={self.committed}",
            )
        a, b = self.dst[seg_a], self.dst[seg_b]
        if a is None or b is None:
            raise ProtocolViolation("segment_empty", f"regs: {op} on unpopulated segment")
        if op not in _BINARY_OPS:
            raise ProtocolViolation("unknown_op", f"unsupported tile op {op!r}")
        with np.errstate(divide="ignore", invalid="ignore"):
            self.dst[seg_a] = _BINARY_OPS[op](a, b)
        self.core.ledger.count_tile_ops()
        self.core.note_op()

    def pack_tile(self, seg: int, page) -> None:
        """PACK writes a dst segment out to a reserved CB page."""
        self._check_segment(seg)
        if self.dst_owner != OWNER_PACK:
            raise ProtocolViolation(
                "pack_before_wait", f"regs: pack_tile with owner={self.dst_owner}"
            )
        if page.state != RESERVED:
            raise ProtocolViolation(
                "pack_unreserved_page", f"pack into a page in state {page.state!r}"
            )
        values = self.dst[seg]
        if values is None:
            raise ProtocolViolation("segment_empty", "pack_tile from unpopulated segment")
        page.length = values.size
        page.array[: values.size] = values
        self.core.ledger.count_tile_ops()
        self.core.trace_event("pack_tile", seg=seg, cb=page.cb.name, n=int(values.size))
        self.core.note_op()

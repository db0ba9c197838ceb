"""Agent programs for the FFT kernel family.

Three agents share one core, in fixed scheduling order: the in data mover
fills the left/right/twiddle circular buffers in stream order for each
step, the compute agent runs the ten-composite butterfly pipeline per page
set, and the out data mover returns results either to natural order (the
two-reorder scheme) or directly into the next step's stream order (the
one-reorder scheme). A counting semaphore enforces the step barrier: no
page of step s+1 is gathered before every result page of step s has been
scattered.

SRAM residency per run: ping and pong domain buffers, the twiddle table,
and two banks of per-step reorder index tables (the bank for the step in
flight plus the one being prepared for the next step). Index-table
construction is address arithmetic on the mover cores and is not ledgered
as data movement; the tables count toward the SRAM budget only. Whole-step
variants additionally size every stream CB to hold a full step, which is
what serialises the three agents and is charged as batch-stall elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..fftcore import bit_reverse_indices, ensure_power_of_two, twiddle_table
from ..sim.arena import Span
from ..sim.cb import PAGE_ELEMS
from ..sim.core import TensixCore
from ..sim.ledger import ENGINE_THCON
from ..sim.registers import ADD, MUL, SUB
from ..sim.scheduler import Semaphore
from .plans import StepPlan, build_step_plans, compose_reorder
from .variants import AblationFlags, KernelVariant, ONE_REORDER

IN_AGENT, COMPUTE_AGENT, OUT_AGENT = "in_mover", "compute", "out_mover"

DATA_CBS = ("data1_r", "data1_i", "twiddle_r", "twiddle_i", "data0_r", "data0_i")
OUT_CBS = ("out_d1_r", "out_d1_i", "out_d0_r", "out_d0_i")
INT_CBS = ("int0", "int1", "f0", "f1")

# Reorder streams are issued to ThCon from the three compute baby cores;
# the split is informational only and carries no parallel speedup.
_ISSUER = {
    "data1_r": "unpack", "data1_i": "math", "data0_r": "pack", "data0_i": "unpack",
    "twiddle_r": "math", "twiddle_i": "pack",
    "out_d1_r": "unpack", "out_d1_i": "math", "out_d0_r": "pack", "out_d0_i": "unpack",
}


@dataclass
class KernelIO:
    """Where step 0 reads from and where the final step writes to."""

    input_re: Span
    input_im: Span
    output_re: Span
    output_im: Span


@dataclass
class KernelMemory:
    n: int
    variant: KernelVariant
    page_len: int
    partition: list
    plans: list[StepPlan]
    composed: list
    bitrev: np.ndarray
    ping: tuple
    pong: tuple
    tw: tuple
    idx_tables: object
    allocations: list = field(default_factory=list)

    @property
    def stream_len(self) -> int:
        return self.n // 2

    def step_source(self, step: int):
        return self.ping if step % 2 == 0 else self.pong

    def step_dest(self, step: int):
        return self.pong if step % 2 == 0 else self.ping

    def release(self, core: TensixCore) -> None:
        for allocation in self.allocations:
            core.arena.free(allocation)
        for name in DATA_CBS + OUT_CBS + INT_CBS:
            cb = core.cbs.pop(name)
            core.arena.free(cb.storage)


def split_stream(stream_len: int, page_len: int):
    return [(off, min(page_len, stream_len - off)) for off in range(0, stream_len, page_len)]


def build_kernel_memory(core: TensixCore, n: int, variant: KernelVariant,
                        chunk_elems: int | None = None) -> KernelMemory:
    ensure_power_of_two(n)
    stream_len = n // 2
    if variant.whole_step:
        page_len = PAGE_ELEMS
    else:
        page_len = min(chunk_elems or variant.chunk_pages * PAGE_ELEMS, PAGE_ELEMS)
    partition = split_stream(stream_len, page_len)
    pages_per_step = len(partition)

    allocations = []

    def alloc(name, count, dtype=np.float32):
        allocation = core.arena.alloc(name, count, dtype)
        allocations.append(allocation)
        return allocation

    ping = (alloc("ping_re", n), alloc("ping_im", n))
    pong = (alloc("pong_re", n), alloc("pong_im", n))
    tw = (alloc("twiddle_re", stream_len), alloc("twiddle_im", stream_len))
    # Five index tables per bank (lhs/rhs/twiddle gathers, lhs/rhs scatters),
    # double-banked so the next step's tables can be built while the current
    # step drains.
    idx_tables = alloc("reorder_idx", 2 * 5 * stream_len, np.int32)

    table = twiddle_table(n)
    tw[0].data[:] = table.re
    tw[1].data[:] = table.im

    stream_cb_pages = pages_per_step if variant.whole_step else 2
    for name in DATA_CBS:
        core.add_cb(name, stream_cb_pages, producer=IN_AGENT, consumer=COMPUTE_AGENT)
    for name in OUT_CBS:
        core.add_cb(name, stream_cb_pages, producer=COMPUTE_AGENT, consumer=OUT_AGENT)
    for name in INT_CBS:
        core.add_cb(name, 2, producer=COMPUTE_AGENT, consumer=COMPUTE_AGENT)

    plans = build_step_plans(n)
    composed = [None] * len(plans)
    if variant.reorder_scheme == ONE_REORDER:
        for step in range(len(plans) - 1):
            composed[step] = compose_reorder(plans[step], plans[step + 1])

    return KernelMemory(
        n=n, variant=variant, page_len=page_len, partition=partition, plans=plans,
        composed=composed, bitrev=bit_reverse_indices(n), ping=ping, pong=pong,
        tw=tw, idx_tables=idx_tables, allocations=allocations,
    )


def _width_for(variant: KernelVariant, span: Span) -> int:
    """Width for one contiguous side; falls back to 32 when unaligned."""
    if (variant.contiguous_width == 128 and span.length % 4 == 0
            and span.byte_start() % 16 == 0):
        return 128
    return 32


def _issuer(variant: KernelVariant, cb_name: str):
    return _ISSUER[cb_name] if variant.copy_engine == ENGINE_THCON else None


def _batch_stall(core: TensixCore, mem: KernelMemory, streams: int) -> None:
    if mem.variant.whole_step:
        excess = max(0, mem.stream_len - mem.page_len)
        for _ in range(streams):
            core.ledger.count_batch_stall(excess)


def in_mover_program(core: TensixCore, mem: KernelMemory, flags: AblationFlags,
                     io: KernelIO, step_done: Semaphore):
    variant = mem.variant
    identity_read = variant.reorder_scheme == ONE_REORDER
    for step, plan in enumerate(mem.plans):
        if step > 0:
            # Step barrier: every result page of the previous step must be
            # scattered before this step's first gather.
            yield from step_done.wait_at_least(step)
        if step == 0 and flags.external_read:
            src = (io.input_re, io.input_im)
        else:
            src_re, src_im = mem.step_source(step)
            src = (src_re.span(), src_im.span())

        for off, length in mem.partition:
            for cb_name in DATA_CBS:
                cb = core.cb(cb_name)
                page = yield from cb.reserve()
                page.length = length
                dst = page.span(0, length)
                plane = 0 if cb_name.endswith("_r") else 1
                if cb_name.startswith("twiddle"):
                    if flags.read_reorder:
                        core.mover_gather(
                            mem.tw[plane], plan.twiddle_stream[off:off + length], dst,
                            variant.copy_engine, _width_for(variant, dst),
                            issuer=_issuer(variant, cb_name), step=step,
                        )
                    else:
                        page.array[:length] = mem.tw[plane].data[off:off + length]
                else:
                    side = plan.gather_lhs if cb_name.startswith("data0") else plan.gather_rhs
                    src_span = src[plane]
                    if not flags.read_reorder:
                        base = off if cb_name.startswith("data0") else mem.stream_len + off
                        page.array[:length] = src_span.alloc.data[
                            src_span.start + base : src_span.start + base + length
                        ]
                    elif identity_read and step > 0:
                        base = off if cb_name.startswith("data0") else mem.stream_len + off
                        run = Span(src_span.alloc, src_span.start + base, length)
                        width = min(_width_for(variant, run), _width_for(variant, dst))
                        core.mover_copy(run, dst, variant.copy_engine, width,
                                        issuer=_issuer(variant, cb_name), step=step)
                    else:
                        idx = side[off:off + length]
                        if step == 0:
                            idx = mem.bitrev[idx]
                        core.mover_gather(
                            src_span.alloc, src_span.start + idx, dst,
                            variant.copy_engine, _width_for(variant, dst),
                            issuer=_issuer(variant, cb_name), step=step,
                        )
                cb.push(page)
        if flags.read_reorder:
            _batch_stall(core, mem, streams=len(DATA_CBS))


def compute_program(core: TensixCore, mem: KernelMemory, flags: AblationFlags):
    for _step in range(len(mem.plans)):
        for _off, length in mem.partition:
            if flags.compute:
                yield from core.cb("data1_r").wait()
                yield from core.cb("data1_i").wait()
                # f0 = d1.r*w.r - d1.i*w.i
                yield from core.maths_sfpu_op(MUL, "data1_r", "twiddle_r", "int0")
                yield from core.maths_sfpu_op(MUL, "data1_i", "twiddle_i", "int1")
                yield from core.maths_sfpu_op(SUB, "int0", "int1", "f0", True, True)
                # f1 = d1.r*w.i + d1.i*w.r
                yield from core.maths_sfpu_op(MUL, "data1_r", "twiddle_i", "int0")
                yield from core.maths_sfpu_op(MUL, "data1_i", "twiddle_r", "int1")
                yield from core.maths_sfpu_op(ADD, "int0", "int1", "f1", True, True)
                yield from core.cb("data0_r").wait()
                yield from core.cb("data0_i").wait()
                yield from core.maths_sfpu_op(SUB, "data0_r", "f0", "out_d1_r")
                yield from core.maths_sfpu_op(SUB, "data0_i", "f1", "out_d1_i")
                yield from core.maths_sfpu_op(ADD, "data0_r", "f0", "out_d0_r")
                yield from core.maths_sfpu_op(ADD, "data0_i", "f1", "out_d0_i")
                for name in ("data0_r", "data0_i", "data1_r", "data1_i",
                             "twiddle_r", "twiddle_i", "f0", "f1"):
                    core.cb(name).pop()
            else:
                # Disabled compute passes data through untouched, at no cost.
                for src_name, dst_name in (("data1_r", "out_d1_r"), ("data1_i", "out_d1_i"),
                                           ("data0_r", "out_d0_r"), ("data0_i", "out_d0_i")):
                    src_cb, dst_cb = core.cb(src_name), core.cb(dst_name)
                    page_in = yield from src_cb.wait()
                    page_out = yield from dst_cb.reserve()
                    page_out.length = length
                    page_out.array[:length] = page_in.data
                    dst_cb.push(page_out)
                for name in ("data0_r", "data0_i", "data1_r", "data1_i",
                             "twiddle_r", "twiddle_i"):
                    core.cb(name).pop()


def out_mover_program(core: TensixCore, mem: KernelMemory, flags: AblationFlags,
                      io: KernelIO, step_done: Semaphore):
    variant = mem.variant
    last_step = len(mem.plans) - 1
    for step, plan in enumerate(mem.plans):
        composed = mem.composed[step]
        if step == last_step and flags.external_write:
            dst = (io.output_re, io.output_im)
        else:
            dst_re, dst_im = mem.step_dest(step)
            dst = (dst_re.span(), dst_im.span())
        for off, length in mem.partition:
            for cb_name in OUT_CBS:
                cb = core.cb(cb_name)
                page = yield from cb.wait()
                if flags.write_reorder:
                    is_d0 = cb_name.startswith("out_d0")
                    plane = 0 if cb_name.endswith("_r") else 1
                    if composed is not None and step != last_step:
                        base = 0 if is_d0 else mem.stream_len
                        idx = composed[base + off : base + off + length]
                    else:
                        side = plan.gather_lhs if is_d0 else plan.gather_rhs
                        idx = side[off:off + length]
                    src_span = page.span(0, length)
                    dst_span = dst[plane]
                    core.mover_scatter(
                        src_span, dst_span.alloc, dst_span.start + idx,
                        variant.copy_engine, _width_for(variant, src_span),
                        issuer=_issuer(variant, cb_name), step=step,
                    )
                cb.pop()
        if flags.write_reorder:
            _batch_stall(core, mem, streams=len(OUT_CBS))
        step_done.signal()


def build_agents(core: TensixCore, mem: KernelMemory, flags: AblationFlags, io: KernelIO):
    step_done = Semaphore(core, "step_done")
    return [
        (IN_AGENT, in_mover_program(core, mem, flags, io, step_done)),
        (COMPUTE_AGENT, compute_program(core, mem, flags)),
        (OUT_AGENT, out_mover_program(core, mem, flags, io, step_done)),
    ]

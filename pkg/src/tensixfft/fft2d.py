"""Multi-core 2D FFT: distributed rows, local row FFTs, a global transpose
over the NoC, then local column FFTs.

Rows are split evenly across cores. The transpose is a direct all-to-all
block exchange: core i sends the block of its rows that falls in core j's
column range, transposed, straight into core j's staging buffer, with
every element charged once per plane to the source core's NoC counter.
After the exchange each core's staging buffer holds its columns stored as
contiguous local rows, so the column pass reuses the unmodified 1D kernel.
The inner kernel runs read from and write to local SRAM; only the initial
distribution and the final gather touch DRAM.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DecompositionError
from .fftcore import ComplexBuffer, dft2d_oracle, ensure_power_of_two, rel_l2_error
from .kernels.programs import KernelIO, build_agents, build_kernel_memory
from .kernels.runner import _resolve_variant
from .kernels.variants import ALL_ON
from .report import build_grid_report
from .sim.grid import CoreGrid
from .sim.ledger import ENGINE_BABY
from .sim.scheduler import Scheduler

ORACLE_ELEMENT_LIMIT = 65536  # above this the O(N^2) 2D oracle is skipped

_transpose_gen = itertools.count()  # unique staging names per transpose call


@dataclass(frozen=True)
class Distribution2D:
    rows: int
    cols: int
    num_cores: int

    def __post_init__(self):
        ensure_power_of_two(self.rows)
        ensure_power_of_two(self.cols)
        if self.rows % self.num_cores != 0:
            raise DecompositionError(
                f"{self.rows} rows cannot be split evenly across {self.num_cores} cores"
            )
        if self.cols % self.num_cores != 0:
            raise DecompositionError(
                f"{self.cols} columns cannot be split evenly across {self.num_cores} cores"
            )

    @property
    def rows_per_core(self) -> int:
        return self.rows // self.num_cores

    @property
    def cols_per_core(self) -> int:
        return self.cols // self.num_cores


def distribute_rows(inp: ComplexBuffer, dist: Distribution2D, grid: CoreGrid) -> list:
    """Load core i with global rows [i*rpc, (i+1)*rpc), row-major, from DRAM."""
    if grid.num_cores != dist.num_cores:
        raise DecompositionError(
            f"grid has {grid.num_cores} cores, distribution expects {dist.num_cores}"
        )
    re = inp.re.reshape(dist.rows, dist.cols)
    im = inp.im.reshape(dist.rows, dist.cols)
    rpc, cols = dist.rows_per_core, dist.cols
    locals_ = []
    for i, core in enumerate(grid.cores):
        local = (core.arena.alloc("rows_re", rpc * cols), core.arena.alloc("rows_im", rpc * cols))
        local[0].data[:] = re[i * rpc : (i + 1) * rpc].ravel()
        local[1].data[:] = im[i * rpc : (i + 1) * rpc].ravel()
        # Host DRAM -> core SRAM, moved by the in data mover at 32 bits.
        core.ledger.count_access("dram", ENGINE_BABY, 32, 2 * rpc * cols)
        core.ledger.count_access("sram", ENGINE_BABY, 32, 2 * rpc * cols)
        locals_.append(local)
    return locals_


def global_transpose(grid: CoreGrid, dist: Distribution2D, locals_: list) -> list:
    """All-to-all block exchange; returns the transposed local buffers.

    Core j ends up holding columns [j*cpc, (j+1)*cpc) as rows of the
    transposed matrix (local row c, position r == global element (r, c)).
    """
    rpc, cpc = dist.rows_per_core, dist.cols_per_core
    tag = next(_transpose_gen)
    staging = []
    for core in grid.cores:
        staging.append(
            (core.arena.alloc(f"cols{tag}_re", cpc * dist.rows),
             core.arena.alloc(f"cols{tag}_im", cpc * dist.rows))
        )
    transfers = []
    for i in range(dist.num_cores):
        src_re, src_im = locals_[i]
        block_re = src_re.data.reshape(rpc, dist.cols)
        block_im = src_im.data.reshape(rpc, dist.cols)
        for j in range(dist.num_cores):
            # Core i's (i, j) block, transposed, lands in the matching
            # window of core j's staging buffer.
            for plane, block, stage in ((0, block_re, staging[j][0]), (1, block_im, staging[j][1])):
                src = block[:, j * cpc : (j + 1) * cpc].T
                dst = stage.data.reshape(cpc, dist.rows)[:, i * rpc : (i + 1) * rpc]
                transfers.append((i, j, np.ascontiguousarray(src), dst))
    grid.noc_exchange(transfers)
    for i, core in enumerate(grid.cores):
        core.arena.free(locals_[i][0])
        core.arena.free(locals_[i][1])
    return staging


def _fft_local_rows(grid, dist, locals_, n, variant, flags, num_rows):
    """Run the 1D kernel over each locally held row of length n, in place."""
    for core, (loc_re, loc_im) in zip(grid.cores, locals_):
        mem = build_kernel_memory(core, n, variant)
        for r in range(num_rows):
            io = KernelIO(
                input_re=loc_re.span(r * n, n),
                input_im=loc_im.span(r * n, n),
                output_re=loc_re.span(r * n, n),
                output_im=loc_im.span(r * n, n),
            )
            Scheduler([core]).run(build_agents(core, mem, flags, io))
        mem.release(core)


def run_fft2d(inp: ComplexBuffer, dist: Distribution2D, variant="single_copy",
              flags=ALL_ON, *, weights=None, record_trace: bool = False,
              check: bool = True):
    """Row FFTs, global transpose, column FFTs; returns (output, report)."""
    variant = _resolve_variant(variant)
    if inp.n != dist.rows * dist.cols:
        raise DecompositionError(
            f"input has {inp.n} elements, expected {dist.rows}x{dist.cols}"
        )
    grid = CoreGrid(dist.num_cores, weights=weights, record_trace=record_trace)

    locals_ = distribute_rows(inp, dist, grid)
    _fft_local_rows(grid, dist, locals_, dist.cols, variant, flags, dist.rows_per_core)
    transposed = global_transpose(grid, dist, locals_)
    _fft_local_rows(grid, dist, transposed, dist.rows, variant, flags, dist.cols_per_core)

    # Gather to host layout: core j's local row c at position r is the
    # transformed global element (r, j*cpc + c).
    out_re = np.empty((dist.rows, dist.cols), np.float32)
    out_im = np.empty((dist.rows, dist.cols), np.float32)
    cpc = dist.cols_per_core
    for j, core in enumerate(grid.cores):
        loc_re = transposed[j][0].data.reshape(cpc, dist.rows)
        loc_im = transposed[j][1].data.reshape(cpc, dist.rows)
        out_re[:, j * cpc : (j + 1) * cpc] = loc_re.T
        out_im[:, j * cpc : (j + 1) * cpc] = loc_im.T
        core.ledger.count_access("sram", ENGINE_BABY, 32, 2 * cpc * dist.rows)
        core.ledger.count_access("dram", ENGINE_BABY, 32, 2 * cpc * dist.rows)
    out = ComplexBuffer(out_re, out_im)

    checked = bool(check and flags.all_enabled and inp.n <= ORACLE_ELEMENT_LIMIT)
    max_rel_err = 0.0
    if checked:
        max_rel_err = rel_l2_error(out, dft2d_oracle(inp, dist.rows, dist.cols))

    report = build_grid_report(
        grid, variant=variant.name, rows=dist.rows, cols=dist.cols,
        flags=flags, checked=checked, max_rel_err=max_rel_err,
    )
    return out, report

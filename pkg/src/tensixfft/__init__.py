"""Deterministic simulator of a Tensix-style dataflow core, with radix-2
FFT kernels, a transaction-count cost model, and a multi-core 2D FFT."""

from . import errors
from .fftcore import (
    ComplexBuffer,
    FftDims,
    TwiddleTable,
    bit_reverse_indices,
    bit_reverse_permute,
    dft2d_oracle,
    dft_oracle,
    fft_reference,
    ifft_reference,
    random_buffer,
    rel_l2_error,
    twiddle_table,
)
from .fft2d import Distribution2D, distribute_rows, global_transpose, run_fft2d
from .kernels import (
    ABLATION_ROWS,
    ALL_ON,
    AblationFlags,
    KernelVariant,
    LADDER_ORDER,
    VARIANTS,
    build_step_plans,
    compose_reorder,
    get_variant,
    run_ablation,
    run_fft_kernel,
)
from .sim import (
    CircularBuffer,
    CoreGrid,
    CostLedger,
    DEFAULT_WEIGHTS,
    PAGE_ELEMS,
    RegisterFile,
    Scheduler,
    SRAM_CAPACITY_BYTES,
    SramArena,
    TensixCore,
    run_schedule,
)

__version__ = "0.1.0"

__all__ = [
    "errors",
    "ComplexBuffer",
    "FftDims",
    "TwiddleTable",
    "bit_reverse_indices",
    "bit_reverse_permute",
    "dft_oracle",
    "dft2d_oracle",
    "fft_reference",
    "ifft_reference",
    "random_buffer",
    "rel_l2_error",
    "twiddle_table",
    "Distribution2D",
    "distribute_rows",
    "global_transpose",
    "run_fft2d",
    "ABLATION_ROWS",
    "ALL_ON",
    "AblationFlags",
    "KernelVariant",
    "LADDER_ORDER",
    "VARIANTS",
    "build_step_plans",
    "compose_reorder",
    "get_variant",
    "run_ablation",
    "run_fft_kernel",
    "CircularBuffer",
    "CoreGrid",
    "CostLedger",
    "DEFAULT_WEIGHTS",
    "PAGE_ELEMS",
    "RegisterFile",
    "Scheduler",
    "SRAM_CAPACITY_BYTES",
    "SramArena",
    "TensixCore",
    "run_schedule",
    "__version__",
]

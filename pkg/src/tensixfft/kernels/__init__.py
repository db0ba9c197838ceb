from .plans import StepPlan, build_step_plans, compose_reorder, stream_position_map
from .programs import (
    COMPUTE_AGENT,
    DATA_CBS,
    IN_AGENT,
    INT_CBS,
    KernelIO,
    KernelMemory,
    OUT_AGENT,
    OUT_CBS,
    build_agents,
    build_kernel_memory,
    split_stream,
)
from .runner import run_ablation, run_fft_kernel
from .variants import (
    ABLATION_ROWS,
    ALL_ON,
    AblationFlags,
    FLAG_ORDER,
    KernelVariant,
    LADDER_ORDER,
    VARIANTS,
    get_variant,
)

__all__ = [
    "StepPlan",
    "build_step_plans",
    "compose_reorder",
    "stream_position_map",
    "KernelIO",
    "KernelMemory",
    "build_agents",
    "build_kernel_memory",
    "split_stream",
    "IN_AGENT",
    "COMPUTE_AGENT",
    "OUT_AGENT",
    "DATA_CBS",
    "OUT_CBS",
    "INT_CBS",
    "run_fft_kernel",
    "run_ablation",
    "ABLATION_ROWS",
    "ALL_ON",
    "AblationFlags",
    "FLAG_ORDER",
    "KernelVariant",
    "LADDER_ORDER",
    "VARIANTS",
    "get_variant",
]

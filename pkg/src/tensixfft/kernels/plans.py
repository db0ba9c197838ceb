"""Per-step gather/scatter permutation planning.

A step plan records, in stream order (spectra outer, point inner), which
natural-order indices feed the left and right butterfly operands and which
twiddle-table entry each pair uses. The same plan read backwards is the
scatter that returns results to natural order; composing one step's
scatter with the next step's gather gives the single permutation used by
the one-reorder scheme.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..fftcore import FftDims, ensure_power_of_two


@dataclass(frozen=True)
class StepPlan:
    n: int
    step: int
    gather_lhs: np.ndarray    # stream position k -> natural index of d0
    gather_rhs: np.ndarray    # stream position k -> natural index of d1
    twiddle_stream: np.ndarray  # stream position k -> twiddle table index

    @property
    def stream_len(self) -> int:
        return self.n // 2


def build_step_plans(n: int) -> list[StepPlan]:
    ensure_power_of_two(n)
    dims = FftDims(n)
    plans = []
    for step in range(dims.num_steps):
        half = dims.half_span(step)
        span = dims.span(step)
        spectra = np.arange(dims.spectra_count(step), dtype=np.intp)
        points = np.arange(0, n, span, dtype=np.intp)
        # C-order ravel keeps the spectra loop outer, matching stream order.
        d0 = (spectra[:, None] + points[None, :]).ravel()
        twiddle = np.repeat(spectra << dims.twiddle_shift(step), points.size)
        plans.append(StepPlan(n, step, d0, d0 + half, twiddle))
    return plans


def stream_position_map(plan: StepPlan) -> np.ndarray:
    """Inverse view: natural index -> position in the packed stream buffer.

    The packed layout puts the lhs stream at [0, n/2) and the rhs stream at
    [n/2, n), which is what a contiguous in-mover read expects.
    """
    inv = np.empty(plan.n, dtype=np.intp)
    half = plan.stream_len
    inv[plan.gather_lhs] = np.arange(half, dtype=np.intp)
    inv[plan.gather_rhs] = np.arange(half, dtype=np.intp) + half
    return inv


def compose_reorder(plan_out: StepPlan, plan_next: StepPlan) -> np.ndarray:
    """Permutation sending step ``plan_out`` results straight into the
    packed stream layout of ``plan_next``.

    Entry k < n/2 is the destination of the d0 output at stream position k;
    entry n/2 + k is the destination of the d1 output. Equals the next
    step's gather composed with this step's scatter, collapsed into one
    index map.
    """
    if plan_out.n != plan_next.n:
        raise ValueError(f"plans for different sizes: {plan_out.n} vs {plan_next.n}")
    inv_next = stream_position_map(plan_next)
    return np.concatenate([inv_next[plan_out.gather_lhs], inv_next[plan_out.gather_rhs]])

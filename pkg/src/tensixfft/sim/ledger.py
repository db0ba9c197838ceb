"""Transaction-count cost ledger.

Every data movement and tile operation increments a counter; the modeled
cost is the weighted sum of the counters. The weights are calibration
knobs, not hardware truths: defaults are chosen so the optimisation ladder
and the component-ablation ratios come out in the published order. They
are explicit configuration, never hidden constants.
"""

from __future__ import annotations

from ..errors import AlignmentError, SimError

COUNTER_NAMES = (
    "mover_access_32",
    "dram_access_32",
    "thcon_access_32",
    "thcon_access_128",
    "tile_ops",
    "noc_words",
    "batch_stall_elements",
)

DEFAULT_WEIGHTS = {
    "mover_access_32": 3.0,
    "dram_access_32": 6.0,
    "thcon_access_32": 1.5,
    "thcon_access_128": 1.6,
    "tile_ops": 1.0,
    "noc_words": 0.5,
    # Whole-step batching leaves pages resident with nothing overlapping;
    # the stall term is what separates the unpipelined variant from the
    # chunked one on a ledger that otherwise counts identical transactions.
    "batch_stall_elements": 3.0,
}

ENGINE_BABY = "baby_core"
ENGINE_THCON = "thcon"

THCON_ISSUERS = ("unpack", "math", "pack")


def resolve_weights(overrides=None) -> dict:
    weights = dict(DEFAULT_WEIGHTS)
    if overrides:
        for key, value in overrides.items():
            if key not in weights:
                raise SimError(f"unknown cost weight {key!r}")
            weights[key] = float(value)
    return weights


class CostLedger:
    def __init__(self, weights=None):
        self.weights = resolve_weights(weights)
        self.counters = {name: 0 for name in COUNTER_NAMES}
        self.thcon_issue_split = {issuer: 0 for issuer in THCON_ISSUERS}

    def _bump(self, name: str, amount: int) -> None:
        if amount < 0:
            raise SimError(f"counter {name} cannot decrease")
        self.counters[name] += int(amount)

    def count_access(
        self,
        kind: str,
        engine: str,
        width: int,
        nelems: int,
        *,
        byte_start: int = 0,
        issuer: str | None = None,
    ) -> None:
        """Record one side (load or store) of a copy of ``nelems`` FP32 words.

        DRAM accesses are always 32-bit regardless of the requested width.
        128-bit SRAM accesses require 16-byte alignment and a multiple of
        four elements; callers are expected to fall back to 32-bit.
        """
        if nelems == 0:
            return
        if kind == "dram":
            self._bump("dram_access_32", nelems)
            return
        if engine == ENGINE_BABY:
            if width != 32:
                raise SimError("baby-core movers only issue 32-bit accesses")
            self._bump("mover_access_32", nelems)
            return
        if engine != ENGINE_THCON:
            raise SimError(f"unknown copy engine {engine!r}")
        if width == 32:
            self._bump("thcon_access_32", nelems)
            count = nelems
        elif width == 128:
            if nelems % 4 != 0:
                raise AlignmentError(f"128-bit access needs a multiple of 4 elements, got {nelems}")
            if byte_start % 16 != 0:
                raise AlignmentError(f"128-bit access needs 16-byte alignment, offset {byte_start}")
            self._bump("thcon_access_128", nelems // 4)
            count = nelems // 4
        else:
            raise SimError(f"unsupported access width {width}")
        if issuer is not None:
            self.thcon_issue_split[issuer] += count

    def count_tile_ops(self, amount: int = 1) -> None:
        self._bump("tile_ops", amount)

    def count_noc_words(self, amount: int) -> None:
        self._bump("noc_words", amount)

    def count_batch_stall(self, elements: int) -> None:
        self._bump("batch_stall_elements", elements)

    @property
    def modeled_cost(self) -> float:
        return float(sum(self.counters[name] * self.weights[name] for name in COUNTER_NAMES))

    def snapshot(self) -> dict:
        return dict(self.counters)

    @staticmethod
    def sum_counters(ledgers) -> dict:
        total = {name: 0 for name in COUNTER_NAMES}
        for ledger in ledgers:
            for name in COUNTER_NAMES:
                total[name] += ledger.counters[name]
        return total

    @staticmethod
    def cost_of(counters: dict, weights: dict) -> float:
        return float(sum(counters[name] * weights[name] for name in COUNTER_NAMES))
